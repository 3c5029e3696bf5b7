//! Ski rental with probabilistic interval predictions.
//!
//! Days are 1-based. A policy buys on some day `Y`; if skiing stops before
//! `Y` it paid one unit per day, otherwise `Y - 1 + B`. The deterministic
//! policies in [`deterministic`] use the continuous-time model, where buying
//! at time `Y` costs `Y + B` on horizons beyond `Y`.

mod baselines;
mod cache;
mod deterministic;
pub mod oracle;
mod randomized;

use rand::Rng;

use crate::error::{Error, Result};
use crate::types::SkiInstance;

pub use baselines::{ftp_buy_day, woa_distribution};
pub use cache::RsrCache;
pub use deterministic::{
    chi, dsr_buy_day, dsr_drcr, dsr_pip_buy_day, dsr_pip_drcr, la_purohit_buy_day, meta_lambda,
    zeta, GOLDEN_RATIO, MIN_LAMBDA,
};
pub use oracle::drcr_oracle;
pub use randomized::{build_rsr_lp, expected_cost, solve_rsr, RsrProgram};

/// Probability mass over purchase days.
#[derive(Clone, Debug, PartialEq)]
pub struct PurchaseDistribution {
    support: Vec<u64>,
    mass: Vec<f64>,
}

impl PurchaseDistribution {
    /// Checks that days are positive and strictly increasing, masses are
    /// nonnegative and they sum to one within `1e-9`.
    pub fn new(support: Vec<u64>, mass: Vec<f64>) -> Result<Self> {
        if support.len() != mass.len() || support.is_empty() {
            return Err(Error::invalid(format!(
                "support of length {} with {} masses",
                support.len(),
                mass.len()
            )));
        }
        if support[0] == 0 || support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(
                "purchase days must be positive and strictly increasing",
            ));
        }
        if mass.iter().any(|p| !(*p >= 0.0) || !p.is_finite()) {
            return Err(Error::invalid("purchase masses must be finite and nonnegative"));
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!("purchase masses sum to {total}")));
        }
        Ok(PurchaseDistribution { support, mass })
    }

    pub fn point_mass(day: u64) -> Result<Self> {
        PurchaseDistribution::new(vec![day], vec![1.0])
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.support.iter().copied().zip(self.mass.iter().copied())
    }

    pub fn max_day(&self) -> u64 {
        *self.support.last().expect("support is nonempty")
    }

    /// Mass on `day`, zero off the support.
    pub fn mass_at(&self, day: u64) -> f64 {
        self.support
            .binary_search(&day)
            .map_or(0.0, |i| self.mass[i])
    }

    /// Drops days with mass at or below `tol` and renormalizes.
    pub(crate) fn pruned(support: Vec<u64>, mass: Vec<f64>, tol: f64) -> Result<Self> {
        let (support, mass): (Vec<u64>, Vec<f64>) = support
            .into_iter()
            .zip(mass)
            .filter(|(_, p)| *p > tol)
            .unzip();
        let total: f64 = mass.iter().sum();
        if !(total > 0.0) {
            return Err(Error::Solver("purchase distribution has no mass".into()));
        }
        PurchaseDistribution::new(support, mass.into_iter().map(|p| p / total).collect())
    }

    /// Expected ratio `E[ALG] / OPT` on `instance`.
    pub fn expected_ratio(&self, instance: &SkiInstance) -> f64 {
        expected_cost(self, instance) / instance.offline_cost()
    }

    /// Draws a purchase day by inversion.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let r: f64 = rng.gen();
        let mut acc = 0.0;
        for (day, p) in self.iter() {
            acc += p;
            if r < acc {
                return day;
            }
        }
        self.max_day()
    }
}

/// An optimal policy with its consistency `eta` and robustness `gamma`.
#[derive(Clone, Debug, PartialEq)]
pub struct DrcrSolution {
    pub eta: f64,
    pub gamma: f64,
    /// `(1 - δ)·eta + δ·gamma` for the δ the policy was solved under.
    pub drcr: f64,
    pub policy: PurchaseDistribution,
    /// Objective value reported by the linear program.
    pub lp_objective: f64,
}
