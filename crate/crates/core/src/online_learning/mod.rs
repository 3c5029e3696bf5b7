//! Contextual online learning over the space of predictions.
//!
//! Each prediction `θ = (ℓ, u, δ)` is routed to a learner: interval ends are
//! matched exactly (ski rental) or after rounding onto a lattice (online
//! search), and `δ` is covered by a greedy ε-net. Every learner runs
//! exponentiated gradient over a finite expert set with full-information
//! feedback.

mod eg;
mod net;
mod regret;
mod search;
mod ski;

pub use eg::{eg_init, EgLearner, StepSchedule};
pub use net::EpsilonNet;
pub use regret::{policy_regret, LearnerKey, RegretPoint, RoundLog};
pub use search::{
    ol_dynamic_search_round, OlSearch, SearchDiscretization, SearchLearnerConfig,
};
pub use ski::{ol_dynamic_ski_round, ol_static_round, ski_loss_vector, OlSki, SkiLearnerConfig};
