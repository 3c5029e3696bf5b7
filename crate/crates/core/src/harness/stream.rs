//! Seeded instance streams. All randomness comes from ChaCha8 keyed by the
//! run seed; stream 0 of that key generates instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::ExperimentConfig;
use super::normal::{coverage_z, standard_normal};
use crate::error::Result;
use crate::online_search::hard_instance;
use crate::types::{clamp_pip_to_integer_range, pip_from_point, Pip, SearchInstance, SkiInstance};

/// Generator for one run and one RNG stream.
pub fn run_rng(run_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(run_seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkiRound {
    pub pip: Pip,
    pub instance: SkiInstance,
    /// Raw point prediction `p_t` before interval construction.
    pub prediction: f64,
    pub sigma: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchRound {
    pub pip: Pip,
    pub instance: SearchInstance,
    pub prediction: f64,
    pub sigma: f64,
    /// True highest price of the instance.
    pub peak: f64,
}

/// `n_t ~ U(day_support)`, `p_t ~ N(n_t, σ_t²)`, interval `p_t ± zσ_t`
/// rounded outward onto `[1, N̄]`.
pub fn generate_ski_stream(config: &ExperimentConfig, run_seed: u64) -> Result<Vec<SkiRound>> {
    let mut rng = run_rng(run_seed, 0);
    let z = coverage_z(config.confidence);
    let (lo, hi) = config.day_support;
    (0..config.rounds)
        .map(|t| {
            let sigma = config.sigma_at(t);
            let n = rng.gen_range(lo..=hi);
            let prediction = n as f64 + sigma * standard_normal(&mut rng);
            let raw = pip_from_point(prediction, z * sigma, config.delta())?;
            Ok(SkiRound {
                pip: clamp_pip_to_integer_range(&raw, config.horizon_max),
                instance: SkiInstance::new(n, config.buy_cost)?,
                prediction,
                sigma,
            })
        })
        .collect()
}

/// Search analogue: the peak `V_t ~ U[m, M]` is predicted with Gaussian
/// noise whose scale is `σ_t (M - m) / N̄`, the interval is clipped to
/// `[m, M]` and the instance is the hard ramp up to `V_t`.
pub fn generate_search_stream(
    config: &ExperimentConfig,
    run_seed: u64,
) -> Result<Vec<SearchRound>> {
    let mut rng = run_rng(run_seed, 0);
    let z = coverage_z(config.confidence);
    let (m, big_m) = (config.m, config.big_m);
    let scale = (big_m - m) / config.horizon_max as f64;
    (0..config.rounds)
        .map(|t| {
            let sigma = config.sigma_at(t) * scale;
            let peak = m + (big_m - m) * rng.gen::<f64>();
            let prediction = peak + sigma * standard_normal(&mut rng);
            let half = z * sigma;
            let lower = (prediction - half).clamp(m, big_m);
            let upper = (prediction + half).clamp(m, big_m).max(lower);
            Ok(SearchRound {
                pip: Pip::new(lower, upper, config.delta())?,
                instance: hard_instance(peak, m, config.search_steps)?,
                prediction,
                sigma,
                peak,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_rounds_give_point_intervals() {
        let config = ExperimentConfig {
            rounds: 40,
            ..ExperimentConfig::default()
        };
        let stream = generate_ski_stream(&config, 7).unwrap();
        for (t, r) in stream.iter().enumerate() {
            assert!((r.pip.delta() - 0.1).abs() < 1e-15);
            assert!(r.pip.lower() >= 1.0 && r.pip.upper() <= 8.0);
            assert!((1..=8).contains(&r.instance.horizon));
            if (t / 10) % 2 == 0 {
                assert_eq!(r.pip.lower(), r.instance.horizon as f64);
                assert_eq!(r.pip.upper(), r.instance.horizon as f64);
            }
        }
    }

    #[test]
    fn streams_are_deterministic() {
        let config = ExperimentConfig {
            rounds: 100,
            ..ExperimentConfig::default()
        };
        assert_eq!(
            generate_ski_stream(&config, 3).unwrap(),
            generate_ski_stream(&config, 3).unwrap()
        );
        assert_ne!(
            generate_ski_stream(&config, 3).unwrap(),
            generate_ski_stream(&config, 4).unwrap()
        );
        let search = ExperimentConfig {
            problem: super::super::config::Problem::OnlineSearch,
            ..config
        };
        let a = generate_search_stream(&search, 3).unwrap();
        assert_eq!(a, generate_search_stream(&search, 3).unwrap());
        for r in &a {
            assert!(r.pip.lower() >= 1.0 && r.pip.upper() <= 4.0);
            assert!((r.instance.max_price() - r.peak).abs() < 1e-12);
        }
    }
}
