//! Per-round logs and policy regret against the DRCR benchmark.

use crate::types::Pip;

/// Which learner handled a round. For ski rental `lower`/`upper` are the
/// interval days; for online search they index the rounded interval ends on
/// the uniform lattice. Static learners use the all-zero key.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LearnerKey {
    pub lower: u64,
    pub upper: u64,
    pub center: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundLog {
    /// 1-based round index.
    pub t: usize,
    pub theta: Pip,
    /// Mean buy day (ski rental) or mean selling threshold (online search).
    pub decision: f64,
    /// Ratio in expectation over the learner's randomization.
    pub expected_ratio: f64,
    /// Ratio of one sampled decision.
    pub sampled_ratio: f64,
    /// DRCR of the optimal policy for `theta`; NaN when not tracked.
    pub benchmark: f64,
    pub key: LearnerKey,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegretPoint {
    pub t: usize,
    /// `Σ_{s≤t} (expected_ratio_s - benchmark_s)`.
    pub cumulative_regret: f64,
    /// Running mean of `expected_ratio` minus one.
    pub mean_excess: f64,
}

pub fn policy_regret(history: &[RoundLog]) -> Vec<RegretPoint> {
    let mut regret = 0.0;
    let mut total = 0.0;
    history
        .iter()
        .enumerate()
        .map(|(i, log)| {
            regret += log.expected_ratio - log.benchmark;
            total += log.expected_ratio;
            RegretPoint {
                t: i + 1,
                cumulative_regret: regret,
                mean_excess: total / (i + 1) as f64 - 1.0,
            }
        })
        .collect()
}
