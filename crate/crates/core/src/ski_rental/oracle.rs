//! Brute-force evaluation of ski-rental policies.

use super::randomized::integer_interval;
use super::{expected_cost, PurchaseDistribution};
use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpStatus, Sense};
use crate::types::{Pip, SkiInstance};

fn ratio(y: &PurchaseDistribution, horizon: u64, buy_cost: u64) -> f64 {
    let instance = SkiInstance {
        horizon,
        buy_cost,
    };
    expected_cost(y, &instance) / instance.offline_cost()
}

/// Worst expected ratio inside the interval and over all horizons.
///
/// Past `max(B, last support day)` the ratio no longer changes, so the scan
/// stops one day later. An interval lying entirely beyond that point takes
/// the constant tail ratio. Interval ends are rounded outward to integers.
pub fn consistency_robustness(y: &PurchaseDistribution, pip: &Pip, buy_cost: u64) -> (f64, f64) {
    let h = buy_cost.max(y.max_day()) + 1;
    let gamma = (1..=h).map(|n| ratio(y, n, buy_cost)).fold(1.0, f64::max);
    let l = (pip.lower().floor().max(1.0) as u64).min(h);
    let u = (pip.upper().ceil().max(1.0) as u64).min(h);
    let eta = (l..=u).map(|n| ratio(y, n, buy_cost)).fold(1.0, f64::max);
    (eta, gamma)
}

/// DRCR of an arbitrary purchase distribution, by enumeration.
pub fn drcr_oracle(y: &PurchaseDistribution, pip: &Pip, buy_cost: u64) -> f64 {
    let (eta, gamma) = consistency_robustness(y, pip, buy_cost);
    let delta = pip.delta();
    (1.0 - delta) * eta + delta * gamma
}

/// Optimal DRCR over all policies that buy by day `horizon`, from the
/// unreduced program with one column and one row per day.
pub fn truncated_lp_drcr(pip: &Pip, buy_cost: u64, horizon: u64) -> Result<f64> {
    let (l, u) = integer_interval(pip)?;
    let b = buy_cost;
    let h = horizon as usize;
    let delta = pip.delta();
    let mut objective = vec![0.0; 2 + h];
    objective[0] = 1.0 - delta;
    objective[1] = delta;
    let mut program = LinearProgram::minimize(objective);
    program.set_bounds(0, 1.0, f64::INFINITY);
    for n in 1..=horizon {
        let mut row = vec![0.0; 2 + h];
        row[if (l..=u).contains(&n) { 0 } else { 1 }] = -(n.min(b) as f64);
        for t in 1..=n {
            row[1 + t as usize] = (b + t - 1) as f64 - n as f64;
        }
        program.add_row(row, Sense::Le, -(n as f64));
    }
    let mut total = vec![1.0; 2 + h];
    total[0] = 0.0;
    total[1] = 0.0;
    program.add_row(total, Sense::Eq, 1.0);
    let mut order = vec![0.0; 2 + h];
    order[0] = 1.0;
    order[1] = -1.0;
    program.add_row(order, Sense::Le, 0.0);

    let sol = lp::solve(&program)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Solver(format!(
            "truncated ski-rental program is {:?}",
            sol.status
        )));
    }
    Ok(sol.objective_value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pip(l: f64, u: f64, d: f64) -> Pip {
        Pip::new(l, u, d).unwrap()
    }

    #[test]
    fn break_even_policies() {
        // Renting through day B and buying on day B + 1 costs 2B when N > B.
        let y = PurchaseDistribution::point_mass(3).unwrap();
        for (l, u) in [(1.0, 1.0), (1.0, 9.0), (4.0, 6.0)] {
            assert!((drcr_oracle(&y, &pip(l, u, 1.0), 2) - 2.0).abs() < 1e-12);
        }
        // Buying on day B costs B - 1 + B on horizons N >= B.
        for b in [2u64, 5] {
            let y = PurchaseDistribution::point_mass(b).unwrap();
            let expected = (2 * b - 1) as f64 / b as f64;
            assert!((drcr_oracle(&y, &pip(1.0, 1.0, 1.0), b) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn immediate_purchase_on_trusted_long_horizon() {
        let y = PurchaseDistribution::point_mass(1).unwrap();
        assert_eq!(drcr_oracle(&y, &pip(2.0, 2.0, 0.0), 2), 1.0);
    }

    #[test]
    fn interval_beyond_scan_uses_tail_ratio() {
        let y = PurchaseDistribution::point_mass(3).unwrap();
        let (eta, gamma) = consistency_robustness(&y, &pip(50.0, 60.0, 0.5), 2);
        assert!((eta - 2.0).abs() < 1e-12);
        assert!((gamma - 2.0).abs() < 1e-12);
    }

    #[test]
    fn truncated_program_matches_robust_closed_form() {
        let v = truncated_lp_drcr(&pip(1.0, 1.0, 1.0), 2, 6).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-9);
    }
}
