//! Online algorithms that consume uncertainty-quantified predictions.
//!
//! The crate covers two classic online problems, ski rental and one-way
//! trading (online search), under probabilistic interval predictions
//! ([`Pip`]). For a single instance it computes policies that minimise the
//! distributionally-robust competitive ratio (DRCR), `(1-δ)·η + δ·γ`, where
//! `η` is the worst ratio over instances inside the predicted interval and
//! `γ` the worst ratio overall. Across many instances, an ε-net of
//! exponentiated-gradient learners picks policies from the prediction itself.
//!
//! Module map:
//!
//! * [`types`]: predictions, instances and ratio samples.
//! * [`lp`]: the dense two-phase simplex used by both DRCR programs.
//! * [`ski_rental`]: closed-form deterministic policies, the LP-optimal
//!   randomized policy and brute-force oracles.
//! * [`online_search`]: protection functions, the discretized DRCR program,
//!   the protection-function trading loop and its oracle.
//! * [`online_learning`]: EG learners, ε-nets and the per-round drivers.
//! * [`harness`]: configuration, synthetic streams, experiments and charts.

pub mod error;
pub mod harness;
pub mod lp;
pub mod online_learning;
pub mod online_search;
pub mod ski_rental;
pub mod types;

pub use error::{Error, Result};
pub use types::{Pip, RatioSample, SearchInstance, SkiInstance};
