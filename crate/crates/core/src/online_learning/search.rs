//! Contextual learners for online search: experts are selling thresholds.
//!
//! Expert `j` sells the whole unit once the running maximum reaches `Λ_j`.
//! A weight vector over experts is itself a protection function, and its
//! profit is the weighted sum of expert profits.

use std::collections::{BTreeMap, HashMap};

use super::eg::{EgLearner, StepSchedule};
use super::net::EpsilonNet;
use super::regret::{LearnerKey, RoundLog};
use crate::error::{Error, Result};
use crate::online_search::{grid_from_points, pfa_run, solve_pfa, ProtectionFunction};
use crate::types::{Pip, SearchInstance};

/// Relative slack when snapping values onto the lattices.
const SNAP_TOL: f64 = 1e-12;

/// Expert thresholds `Λ = Λ₁ ∪ Λ₂` and the uniform lattice `Λ₂` used to
/// round interval ends.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchDiscretization {
    pub eps: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// `Λ₁ ∪ Λ₂ ∪ {M}`, sorted.
    pub thresholds: Vec<f64>,
    /// `{m, m + λ₂, ...} ∪ {M}`, sorted.
    pub lattice: Vec<f64>,
}

impl SearchDiscretization {
    /// `ε = min{(M/m)^{-2/5}, 1}·T^{-1/5}`, `λ₁ = ε·min{M/m - 1, 1}`,
    /// `λ₂ = ε·(M - m)`.
    pub fn new(m: f64, big_m: f64, rounds: u64) -> Result<Self> {
        let eps = (big_m / m).powf(-0.4).min(1.0) * (rounds.max(1) as f64).powf(-0.2);
        SearchDiscretization::with_eps(m, big_m, eps)
    }

    pub fn with_eps(m: f64, big_m: f64, eps: f64) -> Result<Self> {
        if !(m > 0.0) || !(big_m > m) || !big_m.is_finite() {
            return Err(Error::invalid(format!(
                "search learner needs 0 < m < M, got [{m}, {big_m}]"
            )));
        }
        if !(eps > 0.0) {
            return Err(Error::invalid(format!("discretization eps must be positive, got {eps}")));
        }
        let lambda1 = eps * (big_m / m - 1.0).min(1.0);
        let lambda2 = eps * (big_m - m);

        let mut lattice: Vec<f64> = Vec::new();
        let mut k = 0u32;
        loop {
            let v = m + lambda2 * k as f64;
            if v > big_m * (1.0 - SNAP_TOL) {
                break;
            }
            lattice.push(v);
            k += 1;
        }
        lattice.push(big_m);

        let mut thresholds = lattice.clone();
        let mut v = m;
        while v <= big_m {
            thresholds.push(v);
            v *= 1.0 + lambda1;
        }
        thresholds.sort_by(f64::total_cmp);
        thresholds.dedup_by(|a, b| (*a - *b).abs() <= SNAP_TOL * b.abs());

        Ok(SearchDiscretization {
            eps,
            lambda1,
            lambda2,
            thresholds,
            lattice,
        })
    }

    /// Lattice indices of `ℓ` rounded down and `u` rounded up, after
    /// clamping both into `[m, M]`.
    pub fn round_interval(&self, lower: f64, upper: f64) -> (usize, usize) {
        let m = self.lattice[0];
        let big_m = *self.lattice.last().unwrap();
        let (l, u) = (lower.clamp(m, big_m), upper.clamp(m, big_m));
        let lo = self
            .lattice
            .partition_point(|&x| x <= l * (1.0 + SNAP_TOL))
            .saturating_sub(1);
        let hi = self
            .lattice
            .partition_point(|&x| x < u * (1.0 - SNAP_TOL))
            .min(self.lattice.len() - 1);
        (lo, hi.max(lo))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchLearnerConfig {
    pub m: f64,
    pub big_m: f64,
    pub rounds: u64,
    pub schedule: StepSchedule,
    pub rate_scale: f64,
    /// Overrides the radius of the δ-nets (default: the discretization ε).
    pub net_radius: Option<f64>,
    /// Grid parameter for the DRCR benchmark; `None` skips it.
    pub benchmark_eps: Option<f64>,
}

impl SearchLearnerConfig {
    pub fn new(m: f64, big_m: f64, rounds: u64) -> Self {
        SearchLearnerConfig {
            m,
            big_m,
            rounds,
            schedule: StepSchedule::Anytime,
            rate_scale: 1.0,
            net_radius: None,
            benchmark_eps: Some(0.05),
        }
    }

    /// Largest profit-ratio subgradient entry fed to the learners.
    pub fn loss_bound(&self) -> f64 {
        self.big_m / self.m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Context {
    Dynamic,
    Static,
}

pub struct OlSearch {
    config: SearchLearnerConfig,
    context: Context,
    discretization: SearchDiscretization,
    experts: Vec<ProtectionFunction>,
    nets: BTreeMap<(usize, usize), EpsilonNet<EgLearner>>,
    benchmark: HashMap<(u64, u64, u64), f64>,
    round: usize,
}

impl OlSearch {
    pub fn dynamic(config: SearchLearnerConfig) -> Result<Self> {
        OlSearch::new(config, Context::Dynamic)
    }

    pub fn fixed_context(config: SearchLearnerConfig) -> Result<Self> {
        OlSearch::new(config, Context::Static)
    }

    fn new(config: SearchLearnerConfig, context: Context) -> Result<Self> {
        let discretization = SearchDiscretization::new(config.m, config.big_m, config.rounds)?;
        let thresholds = &discretization.thresholds;
        let grid = grid_from_points(thresholds, config.m, config.big_m)?;
        let experts = (0..thresholds.len())
            .map(|j| {
                let levels = (0..thresholds.len()).map(|k| if k >= j { 1.0 } else { 0.0 }).collect();
                ProtectionFunction::new(grid.clone(), levels)
            })
            .collect::<Result<Vec<_>>>()?;
        EgLearner::new(
            experts.len(),
            config.loss_bound(),
            experts.len(),
            config.schedule,
            config.rate_scale,
        )?;
        if let Some(r) = config.net_radius {
            if !(r > 0.0) {
                return Err(Error::invalid("net radius must be positive"));
            }
        }
        Ok(OlSearch {
            config,
            context,
            discretization,
            experts,
            nets: BTreeMap::new(),
            benchmark: HashMap::new(),
            round: 0,
        })
    }

    pub fn discretization(&self) -> &SearchDiscretization {
        &self.discretization
    }

    pub fn learner_count(&self) -> usize {
        self.nets.values().map(|n| n.len()).sum()
    }

    pub fn clip_count(&self) -> u64 {
        self.nets
            .values()
            .flat_map(|n| n.learners())
            .map(|l| l.clip_count())
            .sum()
    }

    /// Profit of each threshold expert on `instance`.
    pub fn expert_profits(&self, instance: &SearchInstance) -> Result<Vec<f64>> {
        self.experts
            .iter()
            .map(|g| pfa_run(g, instance).map(|r| r.alg_value))
            .collect()
    }

    fn benchmark(&mut self, pip: &Pip) -> Result<f64> {
        let Some(eps) = self.config.benchmark_eps else {
            return Ok(f64::NAN);
        };
        let key = (pip.lower().to_bits(), pip.upper().to_bits(), pip.delta().to_bits());
        if let Some(&v) = self.benchmark.get(&key) {
            return Ok(v);
        }
        let (m, big_m) = (self.config.m, self.config.big_m);
        let clamped = Pip::new(pip.lower().clamp(m, big_m), pip.upper().clamp(m, big_m), pip.delta())?;
        let v = solve_pfa(&clamped, m, big_m, eps)?.drcr;
        self.benchmark.insert(key, v);
        Ok(v)
    }

    /// Plays one round with the mixture of threshold experts, then updates
    /// the chosen learner with the shifted, clipped subgradient of
    /// `OPT/ALG(q)`.
    pub fn round(
        &mut self,
        pip: &Pip,
        instance: &SearchInstance,
    ) -> Result<(ProtectionFunction, RoundLog)> {
        self.round += 1;
        let (lo, hi) = match self.context {
            Context::Dynamic => self.discretization.round_interval(pip.lower(), pip.upper()),
            Context::Static => (0, 0),
        };
        let radius = match self.context {
            Context::Dynamic => self.config.net_radius.unwrap_or(self.discretization.eps),
            Context::Static => f64::INFINITY,
        };
        let profits = self.expert_profits(instance)?;
        let n = self.experts.len();
        let cfg = &self.config;
        let net = match self.nets.entry((lo, hi)) {
            std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::btree_map::Entry::Vacant(e) => e.insert(EpsilonNet::new(radius)?),
        };
        let center = net.lookup_or_insert(&[pip.delta()], || {
            EgLearner::new(n, cfg.loss_bound(), n, cfg.schedule, cfg.rate_scale)
                .expect("validated at construction")
        });
        let learner = net.learner_mut(center);

        let weights = learner.decide();
        let protection = ProtectionFunction::from_masses(self.experts[0].grid().clone(), &weights)?;
        let opt = instance.max_price();
        let alg: f64 = weights.iter().zip(&profits).map(|(w, p)| w * p).sum();
        let ratio = opt / alg;
        let grad: Vec<f64> = profits.iter().map(|p| -opt * p / (alg * alg)).collect();
        let floor = grad.iter().copied().fold(f64::INFINITY, f64::min);
        let losses: Vec<f64> = grad.iter().map(|g| g - floor).collect();
        learner.update(&losses)?;
        let decision = weights
            .iter()
            .zip(&self.discretization.thresholds)
            .map(|(w, v)| w * v)
            .sum();

        let benchmark = self.benchmark(pip)?;
        let log = RoundLog {
            t: self.round,
            theta: *pip,
            decision,
            expected_ratio: ratio,
            sampled_ratio: ratio,
            benchmark,
            key: LearnerKey {
                lower: lo as u64,
                upper: hi as u64,
                center,
            },
        };
        Ok((protection, log))
    }
}

/// One round of the contextual search learner.
pub fn ol_dynamic_search_round(
    state: &mut OlSearch,
    pip: &Pip,
    instance: &SearchInstance,
) -> Result<(ProtectionFunction, RoundLog)> {
    state.round(pip, instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::online_search::hard_instance;

    #[test]
    fn discretization_settings() {
        let d = SearchDiscretization::new(1.0, 4.0, 3000).unwrap();
        let eps = 4f64.powf(-0.4) * 3000f64.powf(-0.2);
        assert!((d.eps - eps).abs() < 1e-15);
        assert!((d.lambda1 - eps).abs() < 1e-15);
        assert!((d.lambda2 - 3.0 * eps).abs() < 1e-15);
        assert_eq!(d.lattice[0], 1.0);
        assert_eq!(*d.lattice.last().unwrap(), 4.0);
        assert!(d.thresholds.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn interval_rounding() {
        // λ₂ = 0.5 on [1, 4].
        let d = SearchDiscretization::with_eps(1.0, 4.0, 0.5 / 3.0).unwrap();
        assert_eq!(d.lattice.len(), 7);
        let (lo, hi) = d.round_interval(2.3, 2.3);
        assert!((d.lattice[lo] - 2.0).abs() < 1e-12);
        assert!((d.lattice[hi] - 2.5).abs() < 1e-12);
        let (lo, hi) = d.round_interval(0.2, 9.0);
        assert_eq!((lo, hi), (0, 6));
        let (lo, hi) = d.round_interval(2.0, 2.0);
        assert_eq!(lo, hi);
    }

    #[test]
    fn flat_instance_leaves_weights_uniform() {
        let mut ol = OlSearch::dynamic(SearchLearnerConfig {
            benchmark_eps: None,
            ..SearchLearnerConfig::new(1.0, 4.0, 100)
        })
        .unwrap();
        let flat = SearchInstance::new(vec![1.0; 4], 1.0, 4.0).unwrap();
        let pip = Pip::new(1.5, 2.0, 0.1).unwrap();
        for _ in 0..3 {
            let (g, log) = ol.round(&pip, &flat).unwrap();
            assert!((log.expected_ratio - 1.0).abs() < 1e-12);
            let q = g.masses();
            assert!(q.iter().all(|x| (x - q[0]).abs() < 1e-12));
        }
    }

    #[test]
    fn best_expert_sits_just_below_the_peak() {
        let ol = OlSearch::dynamic(SearchLearnerConfig::new(1.0, 4.0, 3000)).unwrap();
        let inst = hard_instance(2.7, 1.0, 400).unwrap();
        let profits = ol.expert_profits(&inst).unwrap();
        let t = &ol.discretization().thresholds;
        let best = (0..t.len()).max_by(|&a, &b| profits[a].total_cmp(&profits[b])).unwrap();
        assert!(t[best] <= 2.7);
        assert!(t.iter().filter(|&&v| v > t[best] && v <= 2.7).count() == 0);
        assert!((profits[best] - 2.7).abs() < 2.7 * 0.01);
    }

    #[test]
    fn learner_improves_on_repeated_instances() {
        let mut ol = OlSearch::dynamic(SearchLearnerConfig {
            benchmark_eps: None,
            ..SearchLearnerConfig::new(1.0, 4.0, 500)
        })
        .unwrap();
        let inst = hard_instance(3.0, 1.0, 200).unwrap();
        let pip = Pip::new(2.8, 3.2, 0.1).unwrap();
        let first = ol.round(&pip, &inst).unwrap().1.expected_ratio;
        let mut last = first;
        for _ in 0..500 {
            last = ol.round(&pip, &inst).unwrap().1.expected_ratio;
        }
        assert!(last < first - 0.3, "{first} -> {last}");
    }
}
