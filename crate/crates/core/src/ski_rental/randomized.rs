//! The DRCR-optimal randomized policy and its reduced linear program.

use super::oracle::consistency_robustness;
use super::{DrcrSolution, PurchaseDistribution};
use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpStatus, Sense};
use crate::types::{Pip, SkiInstance};

/// Masses at or below this level are dropped from solved policies.
const MASS_EPSILON: f64 = 1e-12;

/// `Σ_{t≤N} (B+t-1)·y(t) + N·Σ_{t>N} y(t)`.
pub fn expected_cost(y: &PurchaseDistribution, instance: &SkiInstance) -> f64 {
    y.iter()
        .map(|(t, p)| p * instance.cost_of_buy_day(t))
        .sum()
}

/// The reduced program together with the purchase day of each `y` column.
///
/// Columns are `[η, γ, y(support[0]), y(support[1]), ...]`.
#[derive(Clone, Debug)]
pub struct RsrProgram {
    pub program: LinearProgram,
    pub support: Vec<u64>,
}

pub(crate) fn integer_interval(pip: &Pip) -> Result<(u64, u64)> {
    if !pip.is_integral() || pip.lower() < 1.0 {
        return Err(Error::invalid(format!(
            "ski-rental interval must have integer ends >= 1, got [{}, {}]",
            pip.lower(),
            pip.upper()
        )));
    }
    Ok((pip.lower() as u64, pip.upper() as u64))
}

/// Row `C_N`: the expected cost on horizon `N` is at most `r_N·min{N, B}`,
/// where `r_N` is `η` inside the interval and `γ` outside.
fn horizon_row(n: u64, support: &[u64], l: u64, u: u64, b: u64) -> Vec<f64> {
    let mut row = vec![0.0; 2 + support.len()];
    let ratio_col = if (l..=u).contains(&n) { 0 } else { 1 };
    row[ratio_col] = -(n.min(b) as f64);
    for (k, &t) in support.iter().enumerate() {
        if t <= n {
            row[2 + k] = (b + t - 1) as f64 - n as f64;
        }
    }
    row
}

/// Builds the reduced DRCR program for an integer interval.
///
/// Optimal policies only buy on days `1..=B` and, when `u ≥ B`, on day
/// `u + 1`. Likewise only horizons `1..=B` (or `1..B`, `u`, `u + 1`) can
/// bind, so the program has `O(B)` rows and columns.
pub fn build_rsr_lp(pip: &Pip, buy_cost: u64) -> Result<RsrProgram> {
    if buy_cost == 0 {
        return Err(Error::invalid("buy cost must be at least 1"));
    }
    let (l, u) = integer_interval(pip)?;
    let b = buy_cost;
    let (support, horizons): (Vec<u64>, Vec<u64>) = if u < b {
        ((1..=b).collect(), (1..=b).collect())
    } else {
        (
            (1..=b).chain([u + 1]).collect(),
            (1..b).chain([u, u + 1]).collect(),
        )
    };

    let delta = pip.delta();
    let mut objective = vec![0.0; 2 + support.len()];
    objective[0] = 1.0 - delta;
    objective[1] = delta;
    let mut program = LinearProgram::minimize(objective);
    program.set_bounds(0, 1.0, f64::INFINITY);
    for &n in &horizons {
        program.add_row(horizon_row(n, &support, l, u, b), Sense::Le, -(n as f64));
    }
    let mut total = vec![1.0; 2 + support.len()];
    total[0] = 0.0;
    total[1] = 0.0;
    program.add_row(total, Sense::Eq, 1.0);
    let mut order = vec![0.0; 2 + support.len()];
    order[0] = 1.0;
    order[1] = -1.0;
    program.add_row(order, Sense::Le, 0.0);

    Ok(RsrProgram { program, support })
}

/// Solves the reduced program and returns the optimal purchase distribution.
///
/// `eta` and `gamma` are recomputed from the returned policy, so they are the
/// tight worst-case ratios even when the objective gives one of them no
/// weight.
pub fn solve_rsr(pip: &Pip, buy_cost: u64) -> Result<DrcrSolution> {
    let RsrProgram { program, support } = build_rsr_lp(pip, buy_cost)?;
    let sol = lp::solve(&program)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Solver(format!(
            "ski-rental program for [{}, {}] δ={} B={buy_cost} is {:?}",
            pip.lower(),
            pip.upper(),
            pip.delta(),
            sol.status
        )));
    }
    let mass = sol.x[2..].iter().map(|p| p.max(0.0)).collect();
    let policy = PurchaseDistribution::pruned(support, mass, MASS_EPSILON)?;
    let (eta, gamma) = consistency_robustness(&policy, pip, buy_cost);
    let delta = pip.delta();
    Ok(DrcrSolution {
        eta,
        gamma,
        drcr: (1.0 - delta) * eta + delta * gamma,
        policy,
        lp_objective: sol.objective_value,
    })
}
