//! The DRCR-optimal protection function and the trading loop that uses it.
//!
//! With `a = 1/η̂` and `b = 1/γ̂` every constraint of the discretized
//! program is linear in `(a, b, q)`. For fixed `a`, the largest feasible `b`
//! is an LP; `b*(a)` is concave, so `f(a) = (1-δ)/a + δ/b*(a)` is convex and a
//! one-dimensional search over `a` finds the optimum.

use std::collections::HashMap;

use super::grid::{build_grid, PriceGrid};
use super::protection::ProtectionFunction;
use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpStatus, Sense, SolverOptions};
use crate::types::{Pip, RatioSample, SearchInstance};

#[derive(Clone, Debug, PartialEq)]
pub struct PfaOptions {
    /// Points of the uniform scan that brackets the golden-section search.
    pub grid_points: usize,
    /// Final bracket width of the golden-section search over `a`.
    pub tolerance: f64,
    pub solver: SolverOptions,
}

impl Default for PfaOptions {
    fn default() -> Self {
        PfaOptions {
            grid_points: 200,
            tolerance: 1e-6,
            solver: SolverOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchDrcrSolution {
    /// Worst ratio over grid peaks inside the interval.
    pub eta_hat: f64,
    /// Worst ratio over all grid peaks.
    pub gamma_hat: f64,
    /// `(1-δ)·eta_hat + δ·gamma_hat`.
    pub drcr: f64,
    pub protection: ProtectionFunction,
    /// Worst ratios of the returned protection over every peak in `[m, M]`,
    /// not only grid points.
    pub attained_eta: f64,
    pub attained_gamma: f64,
    pub attained_drcr: f64,
    pub lp_solves: usize,
}

/// The parametric program on a fixed grid and δ.
pub struct PfaProgram<'a> {
    grid: &'a PriceGrid,
    delta: f64,
    solver: &'a SolverOptions,
    cache: HashMap<u64, Option<(f64, Vec<f64>)>>,
    solves: usize,
}

impl<'a> PfaProgram<'a> {
    pub fn new(grid: &'a PriceGrid, delta: f64, solver: &'a SolverOptions) -> Self {
        PfaProgram {
            grid,
            delta,
            solver,
            cache: HashMap::new(),
            solves: 0,
        }
    }

    pub fn lp_solves(&self) -> usize {
        self.solves
    }

    /// Revenue coefficients `V_i - m` of the first `k + 1` masses, laid out
    /// after `offset` leading columns.
    fn prefix_row(&self, k: usize, offset: usize) -> Vec<f64> {
        let v = self.grid.values();
        let m = self.grid.floor();
        let mut row = vec![0.0; offset + v.len()];
        for i in 0..=k {
            row[offset + i] = v[i] - m;
        }
        row
    }

    fn mass_row(&self, offset: usize) -> Vec<f64> {
        let mut row = vec![1.0; offset + self.grid.len()];
        row[..offset].iter_mut().for_each(|x| *x = 0.0);
        row
    }

    fn run(&mut self, program: &LinearProgram) -> Result<Option<Vec<f64>>> {
        self.solves += 1;
        let sol = lp::solve_with(program, self.solver)?;
        match sol.status {
            LpStatus::Optimal => Ok(Some(sol.x)),
            LpStatus::Infeasible => Ok(None),
            LpStatus::Unbounded => Err(Error::Solver("trading program is unbounded".into())),
        }
    }

    /// Largest `a = 1/η̂` for which the in-interval constraints can hold.
    pub fn max_consistency(&mut self) -> Result<f64> {
        let v = self.grid.values();
        let m = self.grid.floor();
        let mut objective = vec![0.0; 1 + v.len()];
        objective[0] = -1.0;
        let mut program = LinearProgram::minimize(objective);
        program.set_bounds(0, 0.0, 1.0);
        for k in self.grid.k_lower()..=self.grid.k_upper() {
            let mut row = self.prefix_row(k, 1);
            row[0] = -v[k];
            program.add_row(row, Sense::Ge, -m);
        }
        program.add_row(self.mass_row(1), Sense::Le, 1.0);
        let x = self
            .run(&program)?
            .ok_or_else(|| Error::Solver("consistency program is infeasible".into()))?;
        Ok(x[0])
    }

    /// `b*(a)` and the masses attaining it; `None` when `a` is infeasible.
    pub fn best_robustness(&mut self, a: f64) -> Result<Option<(f64, Vec<f64>)>> {
        if let Some(hit) = self.cache.get(&a.to_bits()) {
            return Ok(hit.clone());
        }
        let v = self.grid.values();
        let m = self.grid.floor();
        let mut objective = vec![0.0; 1 + v.len()];
        objective[0] = -1.0;
        let mut program = LinearProgram::minimize(objective);
        program.set_bounds(0, 0.0, a);
        for k in 0..v.len() {
            let mut row = self.prefix_row(k, 1);
            if self.grid.in_window(k) {
                program.add_row(row, Sense::Ge, v[k] * a - m);
            } else {
                row.iter_mut().for_each(|x| *x = -*x);
                row[0] = v[k];
                program.add_row(row, Sense::Le, m);
            }
        }
        program.add_row(self.mass_row(1), Sense::Le, 1.0);
        let out = self.run(&program)?.map(|x| (x[0], x[1..].to_vec()));
        self.cache.insert(a.to_bits(), out.clone());
        Ok(out)
    }

    /// `f(a) = (1-δ)/a + δ/b*(a)`, `+∞` where infeasible.
    pub fn objective(&mut self, a: f64) -> Result<f64> {
        Ok(match self.best_robustness(a)? {
            Some((b, _)) => {
                let tail = if self.delta == 0.0 { 0.0 } else { self.delta / b };
                (1.0 - self.delta) / a + tail
            }
            None => f64::INFINITY,
        })
    }
}

/// Minimizes a convex `f` on `[lo, hi]`: a uniform scan of `points` values
/// brackets the minimum, then golden-section search narrows it to `tol`.
fn scan_then_golden<F>(mut f: F, lo: f64, hi: f64, points: usize, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if hi - lo <= tol {
        return Ok(hi);
    }
    let n = points.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let mut best = (hi, f(hi)?);
    let mut best_i = n - 1;
    for i in 0..n - 1 {
        let a = lo + step * i as f64;
        let fa = f(a)?;
        if fa < best.1 {
            best = (a, fa);
            best_i = i;
        }
    }
    let mut left = lo + step * best_i.saturating_sub(1) as f64;
    let mut right = if best_i + 1 >= n { hi } else { (lo + step * (best_i + 1) as f64).min(hi) };

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = right - inv_phi * (right - left);
    let mut x2 = left + inv_phi * (right - left);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while right - left > tol {
        if f1 <= f2 {
            right = x2;
            x2 = x1;
            f2 = f1;
            x1 = right - inv_phi * (right - left);
            f1 = f(x1)?;
        } else {
            left = x1;
            x1 = x2;
            f1 = f2;
            x2 = left + inv_phi * (right - left);
            f2 = f(x2)?;
        }
    }
    for (x, fx) in [(x1, f1), (x2, f2)] {
        if fx < best.1 {
            best = (x, fx);
        }
    }
    Ok(best.0)
}

/// Discrete worst ratios `V_k / ALG_k` over grid peaks: `(η̂, γ̂)`.
pub fn discrete_worst_ratios(protection: &ProtectionFunction) -> (f64, f64) {
    let grid = protection.grid();
    let profits = protection.hard_profits();
    let ratios: Vec<f64> = grid
        .values()
        .iter()
        .zip(&profits)
        .map(|(v, p)| v / p)
        .collect();
    let eta = ratios[grid.k_lower()..=grid.k_upper()]
        .iter()
        .copied()
        .fold(1.0, f64::max);
    let gamma = ratios.iter().copied().fold(eta, f64::max);
    (eta, gamma)
}

/// Worst ratios over every peak `V ∈ [m, M]`. On `[V_k, V_{k+1})` the
/// profit stays at `ALG_k`, so the supremum is `V_{k+1}/ALG_k`, approached
/// from below.
pub fn continuous_worst_ratios(protection: &ProtectionFunction) -> (f64, f64) {
    let grid = protection.grid();
    let v = grid.values();
    let profits = protection.hard_profits();
    let last = v.len() - 1;
    let sup_on = |k: usize| if k == last { v[k] / profits[k] } else { v[k + 1] / profits[k] };

    let (kl, ku) = (grid.k_lower(), grid.k_upper());
    let eta = (kl..ku)
        .map(sup_on)
        .fold(v[ku] / profits[ku], f64::max)
        .max(1.0);
    let gamma = (0..=last).map(sup_on).fold(eta, f64::max);
    (eta, gamma)
}

/// Solves the discretized DRCR program for `pip` on the default grid.
pub fn solve_pfa(pip: &Pip, m: f64, big_m: f64, eps: f64) -> Result<SearchDrcrSolution> {
    let grid = build_grid(m, big_m, pip.lower(), pip.upper(), eps)?;
    solve_pfa_on_grid(&grid, pip.delta(), &PfaOptions::default())
}

/// Solves the discretized DRCR program on a given grid; the interval is the
/// grid's window.
pub fn solve_pfa_on_grid(
    grid: &PriceGrid,
    delta: f64,
    options: &PfaOptions,
) -> Result<SearchDrcrSolution> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::invalid(format!("delta {delta} outside [0, 1]")));
    }
    let mut program = PfaProgram::new(grid, delta, &options.solver);
    let a_max = program.max_consistency()?;
    let a_min = (grid.floor() / grid.ceiling()).min(a_max);
    let a_star = scan_then_golden(
        |a| program.objective(a),
        a_min,
        a_max,
        options.grid_points,
        options.tolerance,
    )?;
    let (_, masses) = program
        .best_robustness(a_star)?
        .ok_or_else(|| Error::Solver(format!("trading program infeasible at a = {a_star}")))?;

    let total: f64 = masses.iter().map(|q| q.max(0.0)).sum();
    let scale = if total > 1.0 { 1.0 / total } else { 1.0 };
    let masses: Vec<f64> = masses.iter().map(|q| q.max(0.0) * scale).collect();
    let protection = ProtectionFunction::from_masses(grid.clone(), &masses)?;

    let (eta_hat, gamma_hat) = discrete_worst_ratios(&protection);
    let (attained_eta, attained_gamma) = continuous_worst_ratios(&protection);
    Ok(SearchDrcrSolution {
        eta_hat,
        gamma_hat,
        drcr: (1.0 - delta) * eta_hat + delta * gamma_hat,
        protection,
        attained_eta,
        attained_gamma,
        attained_drcr: (1.0 - delta) * attained_eta + delta * attained_gamma,
        lp_solves: program.lp_solves(),
    })
}

/// Runs the protection-function trading loop on one price sequence.
///
/// Before the first price nothing is committed, so the mass placed at `m`
/// sells at the first price. At each later price the seller tops its sales
/// up to `G(running max)`; the last price takes whatever remains.
pub fn pfa_run(protection: &ProtectionFunction, instance: &SearchInstance) -> Result<RatioSample> {
    let grid = protection.grid();
    let prices = instance.prices();
    let slack = 1e-12 * grid.ceiling();
    if let Some(p) = prices
        .iter()
        .find(|&&p| p < grid.floor() - slack || p > grid.ceiling() + slack)
    {
        return Err(Error::invalid(format!(
            "price {p} outside the protection range [{}, {}]",
            grid.floor(),
            grid.ceiling()
        )));
    }
    let (last, head) = prices.split_last().expect("instances are nonempty");
    let mut committed: f64 = 0.0;
    let mut profit = 0.0;
    let mut running_max = f64::MIN;
    for &p in head {
        running_max = running_max.max(p);
        let target = protection.level_at(running_max);
        if target > committed {
            profit += (target - committed) * p;
            committed = target;
        }
    }
    profit += (1.0 - committed).max(0.0) * last;
    Ok(RatioSample::profit(profit, instance.max_price()))
}
