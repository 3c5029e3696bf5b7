//! Contextual learners for ski rental: experts are buy days `1..=N̄`.

use std::collections::BTreeMap;

use rand::Rng;

use super::eg::{EgLearner, StepSchedule};
use super::net::EpsilonNet;
use super::regret::{LearnerKey, RoundLog};
use crate::error::{Error, Result};
use crate::ski_rental::{PurchaseDistribution, RsrCache};
use crate::types::{Pip, SkiInstance};

#[derive(Clone, Debug, PartialEq)]
pub struct SkiLearnerConfig {
    /// Largest predicted or chosen buy day, `N̄`.
    pub horizon_max: u64,
    pub buy_cost: u64,
    /// Planned number of rounds `T`; sets the default net radius `T^{-1/3}`.
    pub rounds: u64,
    pub schedule: StepSchedule,
    pub rate_scale: f64,
    /// Overrides the radius of the δ-nets.
    pub net_radius: Option<f64>,
}

impl SkiLearnerConfig {
    pub fn new(horizon_max: u64, buy_cost: u64, rounds: u64) -> Self {
        SkiLearnerConfig {
            horizon_max,
            buy_cost,
            rounds,
            schedule: StepSchedule::Anytime,
            rate_scale: 1.0,
            net_radius: None,
        }
    }

    pub fn radius(&self) -> f64 {
        self.net_radius
            .unwrap_or_else(|| (self.rounds.max(1) as f64).powf(-1.0 / 3.0))
    }

    /// `max{(N̄ + B)/B, B}`, the largest possible ratio of any buy day.
    pub fn loss_bound(&self) -> f64 {
        let (n, b) = (self.horizon_max as f64, self.buy_cost as f64);
        ((n + b) / b).max(b)
    }
}

/// Ratio of buying on each day `1..=N̄` on `instance`.
pub fn ski_loss_vector(horizon_max: u64, instance: &SkiInstance) -> Vec<f64> {
    let opt = instance.offline_cost();
    (1..=horizon_max)
        .map(|day| instance.cost_of_buy_day(day) / opt)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Context {
    /// One δ-net per exact interval `(ℓ, u)`.
    Dynamic,
    /// A single learner for all rounds.
    Static,
}

pub struct OlSki {
    config: SkiLearnerConfig,
    context: Context,
    nets: BTreeMap<(u64, u64), EpsilonNet<EgLearner>>,
    benchmark: RsrCache,
    round: usize,
}

impl OlSki {
    pub fn dynamic(config: SkiLearnerConfig) -> Result<Self> {
        OlSki::new(config, Context::Dynamic)
    }

    pub fn fixed_context(config: SkiLearnerConfig) -> Result<Self> {
        OlSki::new(config, Context::Static)
    }

    fn new(config: SkiLearnerConfig, context: Context) -> Result<Self> {
        if config.horizon_max == 0 || config.buy_cost == 0 {
            return Err(Error::invalid("learner needs N̄ >= 1 and B >= 1"));
        }
        if !(config.radius() > 0.0) {
            return Err(Error::invalid("net radius must be positive"));
        }
        // Validates the schedule once so that lazily created learners cannot fail.
        EgLearner::new(
            config.horizon_max as usize,
            config.loss_bound(),
            config.horizon_max as usize,
            config.schedule,
            config.rate_scale,
        )?;
        let benchmark = RsrCache::new(config.buy_cost);
        Ok(OlSki {
            config,
            context,
            nets: BTreeMap::new(),
            benchmark,
            round: 0,
        })
    }

    pub fn config(&self) -> &SkiLearnerConfig {
        &self.config
    }

    /// Learners created so far, over all nets.
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

    pub fn benchmark_solves(&self) -> usize {
        self.benchmark.solves()
    }

    fn check(&self, pip: &Pip, instance: &SkiInstance) -> Result<()> {
        let n = self.config.horizon_max as f64;
        if !pip.is_integral() || pip.lower() < 1.0 || pip.upper() > n {
            return Err(Error::invalid(format!(
                "interval [{}, {}] is not a day range within [1, {n}]",
                pip.lower(),
                pip.upper()
            )));
        }
        if instance.buy_cost != self.config.buy_cost {
            return Err(Error::invalid(format!(
                "instance buy cost {} differs from learner buy cost {}",
                instance.buy_cost, self.config.buy_cost
            )));
        }
        Ok(())
    }

    /// Plays one round: picks the learner for `pip`, reports its buy-day
    /// distribution, then feeds it the full loss vector of `instance`.
    pub fn round<R: Rng + ?Sized>(
        &mut self,
        pip: &Pip,
        instance: &SkiInstance,
        rng: &mut R,
    ) -> Result<(PurchaseDistribution, RoundLog)> {
        self.check(pip, instance)?;
        self.round += 1;
        let (lower, upper) = match self.context {
            Context::Dynamic => (pip.lower() as u64, pip.upper() as u64),
            Context::Static => (0, 0),
        };
        let radius = match self.context {
            Context::Dynamic => self.config.radius(),
            Context::Static => f64::INFINITY,
        };
        let cfg = &self.config;
        let net = match self.nets.entry((lower, upper)) {
            std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::btree_map::Entry::Vacant(e) => e.insert(EpsilonNet::new(radius)?),
        };
        let center = net.lookup_or_insert(&[pip.delta()], || {
            EgLearner::new(
                cfg.horizon_max as usize,
                cfg.loss_bound(),
                cfg.horizon_max as usize,
                cfg.schedule,
                cfg.rate_scale,
            )
            .expect("validated at construction")
        });
        let learner = net.learner_mut(center);

        let weights = learner.decide();
        let losses = ski_loss_vector(cfg.horizon_max, instance);
        let expected_ratio: f64 = weights.iter().zip(&losses).map(|(w, f)| w * f).sum();
        let decision: f64 = weights
            .iter()
            .enumerate()
            .map(|(i, w)| (i + 1) as f64 * w)
            .sum();
        let policy = PurchaseDistribution::pruned((1..=cfg.horizon_max).collect(), weights, 0.0)?;
        let day = policy.sample(rng);
        let sampled_ratio = losses[day as usize - 1];
        learner.update(&losses)?;

        let benchmark = self.benchmark.get(pip)?.drcr;
        let log = RoundLog {
            t: self.round,
            theta: *pip,
            decision,
            expected_ratio,
            sampled_ratio,
            benchmark,
            key: LearnerKey {
                lower,
                upper,
                center,
            },
        };
        Ok((policy, log))
    }
}

/// One round of the contextual learner keyed by `(ℓ, u)` and a δ-net.
pub fn ol_dynamic_ski_round<R: Rng + ?Sized>(
    state: &mut OlSki,
    pip: &Pip,
    instance: &SkiInstance,
    rng: &mut R,
) -> Result<(PurchaseDistribution, RoundLog)> {
    state.round(pip, instance, rng)
}

/// One round of a context-free learner built with [`OlSki::fixed_context`];
/// `pip` is only logged and used for the benchmark.
pub fn ol_static_round<R: Rng + ?Sized>(
    state: &mut OlSki,
    pip: &Pip,
    instance: &SkiInstance,
    rng: &mut R,
) -> Result<(PurchaseDistribution, RoundLog)> {
    state.round(pip, instance, rng)
}
