//! Dense two-phase simplex for small linear programs.
//!
//! Problems are stated as `minimize c·x` subject to rows `a·x {≤,=,≥} b`
//! and per-variable bounds. Bounds are folded into the standard form by
//! shifting, mirroring or splitting variables; finite upper bounds on
//! lower-bounded variables become extra `≤` rows.
//!
//! Pricing is Dantzig's rule. After a run of degenerate pivots the solver
//! falls back to Bland's rule until progress resumes, which rules out
//! cycling. Ties are broken by index so results are deterministic. Once an
//! optimal basis is found the basic values are recomputed from the original
//! data by Gaussian elimination, which removes most of the round-off that
//! tableau updates accumulate.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub coeffs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Row {
    fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum()
    }

    /// Amount by which `x` violates the row, divided by `max(1, ‖a‖₂)`.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = self.activity(x);
        let raw = match self.sense {
            Sense::Le => lhs - self.rhs,
            Sense::Ge => self.rhs - lhs,
            Sense::Eq => (lhs - self.rhs).abs(),
        };
        let norm = self.coeffs.iter().map(|a| a * a).sum::<f64>().sqrt();
        raw.max(0.0) / norm.max(1.0)
    }
}

/// `minimize objective·x` subject to `rows` and `lower ≤ x ≤ upper`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LinearProgram {
    /// New problem with bounds `0 ≤ x < ∞` and no rows.
    pub fn minimize(objective: Vec<f64>) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            rows: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    pub fn width(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, sense: Sense, rhs: f64) -> &mut Self {
        self.rows.push(Row { coeffs, sense, rhs });
        self
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn objective_at(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest relative row violation or bound violation at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self
            .rows
            .iter()
            .map(|r| r.violation(x))
            .fold(0.0, f64::max);
        let bounds = x
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(v, (lo, hi))| (lo - v).max(v - hi).max(0.0))
            .fold(0.0, f64::max);
        rows.max(bounds)
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.width();
        if n == 0 {
            return Err(LpError::Empty);
        }
        if self.lower.len() != n || self.upper.len() != n {
            return Err(LpError::DimensionMismatch {
                what: "bounds",
                expected: n,
                found: self.lower.len().min(self.upper.len()),
            });
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(LpError::DimensionMismatch {
                    what: "row",
                    expected: n,
                    found: row.coeffs.len(),
                });
            }
            if !row.rhs.is_finite() || row.coeffs.iter().any(|a| !a.is_finite()) {
                return Err(LpError::NonFinite { row: Some(i) });
            }
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::NonFinite { row: None });
        }
        for (j, (&lo, &hi)) in self.lower.iter().zip(&self.upper).enumerate() {
            if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY
            {
                return Err(LpError::InvalidBounds {
                    var: j,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solver output. `x` is empty unless the status is `Optimal`; the objective
/// is `+∞` for infeasible and `−∞` for unbounded problems.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective_value: f64,
    pub pivots: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("problem has no variables")]
    Empty,
    #[error("{what} has width {found}, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("variable {var} has bounds [{lower}, {upper}]")]
    InvalidBounds { var: usize, lower: f64, upper: f64 },
    #[error("non-finite coefficient in {}", match row { Some(i) => format!("row {i}"), None => "objective".to_string() })]
    NonFinite { row: Option<usize> },
    #[error("no optimum after {0} pivots")]
    IterationLimit(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverOptions {
    /// Phase-one residual and row-violation tolerance.
    pub feasibility_tol: f64,
    /// A reduced cost counts as improving when below `-optimality_tol`.
    pub optimality_tol: f64,
    /// Tableau entries at or below this magnitude are treated as zero pivots.
    pub pivot_tol: f64,
    pub max_pivots: usize,
    /// Consecutive degenerate pivots before switching to Bland's rule.
    pub degenerate_limit: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            feasibility_tol: 1e-9,
            optimality_tol: 1e-9,
            pivot_tol: 1e-9,
            max_pivots: 50_000,
            degenerate_limit: 50,
        }
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    solve_with(lp, &SolverOptions::default())
}

pub fn solve_with(lp: &LinearProgram, opts: &SolverOptions) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let std = StandardForm::build(lp);
    let mut tab = Tableau::new(&std);

    let phase1 = tab.run(Phase::One, opts)?;
    debug_assert!(phase1, "phase one is bounded below by zero");
    let infeasibility = tab.value(Phase::One);
    let scale = std.rhs.iter().fold(1.0f64, |s, b| s.max(b.abs()));
    if infeasibility > opts.feasibility_tol * scale {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            x: Vec::new(),
            objective_value: f64::INFINITY,
            pivots: tab.pivots,
        });
    }
    tab.evict_artificials(opts);

    if !tab.run(Phase::Two, opts)? {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: Vec::new(),
            objective_value: f64::NEG_INFINITY,
            pivots: tab.pivots,
        });
    }

    let mut values = tab.basic_values();
    polish(&std, &tab, &mut values);
    let x = std.recover(&values);
    let objective_value = lp.objective_at(&x);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective_value,
        pivots: tab.pivots,
    })
}

/// `A x' = b`, `x' ≥ 0`, `b ≥ 0`, with slack, surplus and artificial columns
/// laid out after the structural ones.
struct StandardForm {
    /// Structural column `k` contributes `sign · x'_k` to original variable `var`.
    columns: Vec<(usize, f64)>,
    offset: Vec<f64>,
    matrix: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    cost: Vec<f64>,
    /// Columns `artificial_start..` are artificial.
    artificial_start: usize,
    initial_basis: Vec<usize>,
}

impl StandardForm {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.width();
        let mut columns = Vec::with_capacity(n);
        let mut offset = vec![0.0; n];
        let mut bound_rows = Vec::new();
        for j in 0..n {
            let (lo, hi) = (lp.lower[j], lp.upper[j]);
            if lo.is_finite() {
                offset[j] = lo;
                columns.push((j, 1.0));
                if hi.is_finite() {
                    bound_rows.push((columns.len() - 1, hi - lo));
                }
            } else if hi.is_finite() {
                offset[j] = hi;
                columns.push((j, -1.0));
            } else {
                columns.push((j, 1.0));
                columns.push((j, -1.0));
            }
        }
        let ns = columns.len();

        let mut rows: Vec<(Vec<f64>, Sense, f64)> = Vec::with_capacity(lp.rows.len() + bound_rows.len());
        for row in &lp.rows {
            let mut a = vec![0.0; ns];
            for (k, &(var, sign)) in columns.iter().enumerate() {
                a[k] = sign * row.coeffs[var];
            }
            let shift: f64 = row.coeffs.iter().zip(&offset).map(|(c, o)| c * o).sum();
            rows.push((a, row.sense, row.rhs - shift));
        }
        for &(k, width) in &bound_rows {
            let mut a = vec![0.0; ns];
            a[k] = 1.0;
            rows.push((a, Sense::Le, width));
        }

        for (a, sense, b) in rows.iter_mut() {
            if *b < 0.0 {
                a.iter_mut().for_each(|v| *v = -*v);
                *b = -*b;
                *sense = match *sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
            }
        }

        let n_slack = rows.iter().filter(|r| r.1 != Sense::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Sense::Le).count();
        let artificial_start = ns + n_slack;
        let total = artificial_start + n_art;

        let mut matrix = Vec::with_capacity(rows.len());
        let mut rhs = Vec::with_capacity(rows.len());
        let mut initial_basis = Vec::with_capacity(rows.len());
        let (mut next_slack, mut next_art) = (ns, artificial_start);
        for (a, sense, b) in rows {
            let mut full = a;
            full.resize(total, 0.0);
            match sense {
                Sense::Le => {
                    full[next_slack] = 1.0;
                    initial_basis.push(next_slack);
                    next_slack += 1;
                }
                Sense::Ge => {
                    full[next_slack] = -1.0;
                    next_slack += 1;
                    full[next_art] = 1.0;
                    initial_basis.push(next_art);
                    next_art += 1;
                }
                Sense::Eq => {
                    full[next_art] = 1.0;
                    initial_basis.push(next_art);
                    next_art += 1;
                }
            }
            matrix.push(full);
            rhs.push(b);
        }

        let mut cost = vec![0.0; total];
        for (k, &(var, sign)) in columns.iter().enumerate() {
            cost[k] = sign * lp.objective[var];
        }

        StandardForm {
            columns,
            offset,
            matrix,
            rhs,
            cost,
            artificial_start,
            initial_basis,
        }
    }

    fn total_columns(&self) -> usize {
        self.cost.len()
    }

    fn recover(&self, values: &[f64]) -> Vec<f64> {
        let mut x = self.offset.clone();
        for (k, &(var, sign)) in self.columns.iter().enumerate() {
            x[var] += sign * values[k];
        }
        x
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

/// Row-major tableau: constraint rows, then the phase-two cost row, then the
/// phase-one cost row. The last column holds the right-hand side.
struct Tableau {
    data: Vec<f64>,
    width: usize,
    rows: usize,
    basis: Vec<usize>,
    active: Vec<bool>,
    artificial_start: usize,
    pivots: usize,
    scratch: Vec<(usize, f64)>,
}

impl Tableau {
    fn new(std: &StandardForm) -> Self {
        let cols = std.total_columns();
        let width = cols + 1;
        let rows = std.matrix.len();
        let mut data = vec![0.0; (rows + 2) * width];
        for (i, (a, b)) in std.matrix.iter().zip(&std.rhs).enumerate() {
            data[i * width..i * width + cols].copy_from_slice(a);
            data[i * width + cols] = *b;
        }
        data[rows * width..rows * width + cols].copy_from_slice(&std.cost);

        // Phase-one reduced costs: minus the sum of rows with an artificial basis.
        let aux = (rows + 1) * width;
        for (i, &bv) in std.initial_basis.iter().enumerate() {
            if bv >= std.artificial_start {
                for j in 0..width {
                    if j < std.artificial_start || j == cols {
                        data[aux + j] -= data[i * width + j];
                    }
                }
            }
        }

        Tableau {
            data,
            width,
            rows,
            basis: std.initial_basis.clone(),
            active: vec![true; rows],
            artificial_start: std.artificial_start,
            pivots: 0,
            scratch: Vec::with_capacity(width),
        }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    fn cost_row(&self, phase: Phase) -> usize {
        match phase {
            Phase::Two => self.rows,
            Phase::One => self.rows + 1,
        }
    }

    /// Current objective value of the given phase.
    fn value(&self, phase: Phase) -> f64 {
        -self.rhs(self.cost_row(phase))
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let w = self.width;
        let inv = 1.0 / self.at(r, e);
        self.scratch.clear();
        for j in 0..w {
            let v = self.data[r * w + j];
            if v != 0.0 {
                let v = if j == e { 1.0 } else { v * inv };
                self.data[r * w + j] = v;
                self.scratch.push((j, v));
            }
        }
        for i in 0..self.rows + 2 {
            if i == r || (i < self.rows && !self.active[i]) {
                continue;
            }
            let f = self.data[i * w + e];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.data[i * w..(i + 1) * w];
            for &(j, v) in &self.scratch {
                row[j] -= f * v;
            }
            row[e] = 0.0;
        }
        self.basis[r] = e;
        self.pivots += 1;
    }

    fn entering(&self, phase: Phase, bland: bool, tol: f64) -> Option<usize> {
        let limit = match phase {
            Phase::One => self.width - 1,
            Phase::Two => self.artificial_start,
        };
        let base = self.cost_row(phase) * self.width;
        let costs = &self.data[base..base + limit];
        if bland {
            return costs.iter().position(|&d| d < -tol);
        }
        let mut best: Option<(usize, f64)> = None;
        for (j, &d) in costs.iter().enumerate() {
            if d < -tol && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        best.map(|(j, _)| j)
    }

    /// Minimum-ratio row, ties broken by smallest basic column index.
    fn leaving(&self, e: usize, tol: f64) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.rows {
            if !self.active[i] {
                continue;
            }
            let a = self.at(i, e);
            if a <= tol {
                continue;
            }
            let ratio = self.rhs(i).max(0.0) / a;
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                    if (tie && self.basis[i] < self.basis[bi]) || (!tie && ratio < br) {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best
    }

    /// Runs simplex iterations; returns `false` when the phase is unbounded.
    fn run(&mut self, phase: Phase, opts: &SolverOptions) -> Result<bool, LpError> {
        let mut degenerate = 0usize;
        loop {
            let bland = degenerate >= opts.degenerate_limit;
            let Some(e) = self.entering(phase, bland, opts.optimality_tol) else {
                return Ok(true);
            };
            let Some((r, ratio)) = self.leaving(e, opts.pivot_tol) else {
                return Ok(false);
            };
            if self.pivots >= opts.max_pivots {
                return Err(LpError::IterationLimit(self.pivots));
            }
            if ratio <= opts.feasibility_tol {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, e);
        }
    }

    /// Pivots zero-level artificials out of the basis; rows where that is
    /// impossible are linearly dependent and get deactivated.
    fn evict_artificials(&mut self, opts: &SolverOptions) {
        for i in 0..self.rows {
            if self.basis[i] < self.artificial_start {
                continue;
            }
            let mut best: Option<(usize, f64)> = None;
            for j in 0..self.artificial_start {
                let a = self.at(i, j).abs();
                if a > opts.pivot_tol && best.map_or(true, |(_, b)| a > b) {
                    best = Some((j, a));
                }
            }
            match best {
                Some((j, _)) => self.pivot(i, j),
                None => self.active[i] = false,
            }
        }
    }

    fn basic_values(&self) -> Vec<f64> {
        let mut values = vec![0.0; self.width - 1];
        for i in 0..self.rows {
            if self.active[i] {
                values[self.basis[i]] = self.rhs(i).max(0.0);
            }
        }
        values
    }
}

/// Recomputes basic values by solving `B x_B = b` on the original data.
/// Keeps the tableau values if the system is numerically singular or the
/// refined point leaves the nonnegative orthant.
fn polish(std: &StandardForm, tab: &Tableau, values: &mut [f64]) {
    let rows: Vec<usize> = (0..tab.rows).filter(|&i| tab.active[i]).collect();
    let m = rows.len();
    if m == 0 {
        return;
    }
    let cols: Vec<usize> = rows.iter().map(|&i| tab.basis[i]).collect();
    let mut a: Vec<Vec<f64>> = rows
        .iter()
        .map(|&i| {
            let mut r: Vec<f64> = cols.iter().map(|&c| std.matrix[i][c]).collect();
            r.push(std.rhs[i]);
            r
        })
        .collect();

    for k in 0..m {
        let p = (k..m)
            .max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))
            .unwrap_or(k);
        if a[p][k].abs() < 1e-13 {
            return;
        }
        a.swap(k, p);
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            let f = row[k] / pivot_row[k];
            if f != 0.0 {
                for j in k..=m {
                    row[j] -= f * pivot_row[j];
                }
            }
        }
    }
    let mut sol = vec![0.0; m];
    for k in (0..m).rev() {
        let s: f64 = (k + 1..m).map(|j| a[k][j] * sol[j]).sum();
        sol[k] = (a[k][m] - s) / a[k][k];
    }
    let scale = std.rhs.iter().fold(1.0f64, |s, b| s.max(b.abs()));
    if sol.iter().any(|v| !v.is_finite() || *v < -1e-7 * scale) {
        return;
    }
    for (&c, v) in cols.iter().zip(sol) {
        values[c] = v.max(0.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_binding_constraint() {
        let mut lp = LinearProgram::minimize(vec![1.0]);
        lp.add_row(vec![1.0], Sense::Ge, 1.0);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.x[0] - 1.0).abs() < 1e-12);
        assert!((sol.objective_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_constraint_vertex() {
        let mut lp = LinearProgram::minimize(vec![1.0, 1.0]);
        lp.add_row(vec![1.0, 2.0], Sense::Ge, 4.0)
            .add_row(vec![3.0, 1.0], Sense::Ge, 6.0);
        let sol = solve(&lp).unwrap();
        // Both rows bind: x + 2y = 4 and 3x + y = 6.
        let det = 1.0 * 1.0 - 2.0 * 3.0;
        let x = (4.0 * 1.0 - 2.0 * 6.0) / det;
        let y = (1.0 * 6.0 - 3.0 * 4.0) / det;
        assert!((sol.x[0] - x).abs() < 1e-12 && (sol.x[1] - y).abs() < 1e-12);
        assert!((sol.objective_value - (x + y)).abs() < 1e-12);
        assert!((sol.objective_value - 2.8).abs() < 1e-12);
    }

    #[test]
    fn empty_feasible_set() {
        let mut lp = LinearProgram::minimize(vec![1.0]);
        lp.add_row(vec![1.0], Sense::Le, -1.0);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
        assert!(sol.x.is_empty());
    }

    #[test]
    fn unbounded_direction() {
        let mut lp = LinearProgram::minimize(vec![-1.0, 0.0]);
        lp.add_row(vec![1.0, -1.0], Sense::Le, 1.0);
        assert_eq!(solve(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn free_and_negative_variables() {
        // minimize x - y with x free in [-3, ∞), y ≤ -2, x + y ≥ -10.
        let mut lp = LinearProgram::minimize(vec![1.0, -1.0]);
        lp.set_bounds(0, -3.0, f64::INFINITY)
            .set_bounds(1, f64::NEG_INFINITY, -2.0);
        lp.add_row(vec![1.0, 1.0], Sense::Ge, -10.0);
        let sol = solve(&lp).unwrap();
        assert!((sol.x[0] + 3.0).abs() < 1e-12);
        assert!((sol.x[1] + 2.0).abs() < 1e-12);
        assert!((sol.objective_value + 1.0).abs() < 1e-12);

        let mut lp = LinearProgram::minimize(vec![1.0]);
        lp.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY);
        lp.add_row(vec![2.0], Sense::Eq, -5.0);
        let sol = solve(&lp).unwrap();
        assert!((sol.x[0] + 2.5).abs() < 1e-12);
    }

    #[test]
    fn upper_bounds_and_redundant_equalities() {
        let mut lp = LinearProgram::minimize(vec![-1.0, -2.0]);
        lp.set_bounds(0, 0.0, 3.0).set_bounds(1, 1.0, 2.0);
        lp.add_row(vec![1.0, 1.0], Sense::Eq, 4.0)
            .add_row(vec![2.0, 2.0], Sense::Eq, 8.0);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.x[0] - 2.0).abs() < 1e-12 && (sol.x[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_malformed_input() {
        let mut lp = LinearProgram::minimize(vec![1.0, 1.0]);
        lp.add_row(vec![1.0], Sense::Ge, 1.0);
        assert!(matches!(solve(&lp), Err(LpError::DimensionMismatch { .. })));

        let mut lp = LinearProgram::minimize(vec![1.0]);
        lp.set_bounds(0, 2.0, 1.0);
        assert!(matches!(solve(&lp), Err(LpError::InvalidBounds { .. })));

        assert!(matches!(
            solve(&LinearProgram::minimize(vec![])),
            Err(LpError::Empty)
        ));
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Beale's classic cycling example under textbook Dantzig pricing.
        let mut lp = LinearProgram::minimize(vec![-0.75, 150.0, -0.02, 6.0]);
        lp.add_row(vec![0.25, -60.0, -0.04, 9.0], Sense::Le, 0.0)
            .add_row(vec![0.5, -90.0, -0.02, 3.0], Sense::Le, 0.0)
            .add_row(vec![0.0, 0.0, 1.0, 0.0], Sense::Le, 1.0);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective_value + 0.05).abs() < 1e-12);
    }

    #[test]
    fn iteration_limit_is_reported() {
        let mut lp = LinearProgram::minimize(vec![1.0, 1.0]);
        lp.add_row(vec![1.0, 2.0], Sense::Ge, 4.0)
            .add_row(vec![3.0, 1.0], Sense::Ge, 6.0);
        let opts = SolverOptions {
            max_pivots: 1,
            ..SolverOptions::default()
        };
        assert_eq!(solve_with(&lp, &opts), Err(LpError::IterationLimit(1)));
    }

    fn random_lp(rng: &mut ChaCha8Rng) -> LinearProgram {
        let n = rng.gen_range(1..6);
        let m = rng.gen_range(1..7);
        let objective = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let mut lp = LinearProgram::minimize(objective);
        for j in 0..n {
            let lo = rng.gen_range(-2.0..0.5);
            lp.set_bounds(j, lo, lo + rng.gen_range(0.5..4.0));
        }
        for _ in 0..m {
            let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let sense = match rng.gen_range(0..3) {
                0 => Sense::Le,
                1 => Sense::Ge,
                _ => Sense::Eq,
            };
            let rhs = rng.gen_range(-2.0..2.0);
            lp.add_row(coeffs, sense, rhs);
        }
        lp
    }

    #[test]
    fn optimal_points_are_feasible_and_locally_optimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut optimal = 0;
        for _ in 0..400 {
            let lp = random_lp(&mut rng);
            let sol = solve(&lp).unwrap();
            if sol.status != LpStatus::Optimal {
                continue;
            }
            optimal += 1;
            assert!(lp.max_violation(&sol.x) <= 1e-9, "{lp:?} {sol:?}");
            for _ in 0..50 {
                let dir: Vec<f64> = (0..lp.width()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let y: Vec<f64> = sol.x.iter().zip(&dir).map(|(x, d)| x + 1e-6 * d).collect();
                if lp.max_violation(&y) <= 1e-9 {
                    assert!(lp.objective_at(&y) >= sol.objective_value - 1e-5);
                }
            }
        }
        assert!(optimal > 50);
    }

    proptest! {
        #[test]
        fn solving_is_deterministic(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let lp = random_lp(&mut rng);
            prop_assert_eq!(solve(&lp), solve(&lp));
        }

        #[test]
        fn box_constrained_optimum_matches_vertex_enumeration(
            c in proptest::collection::vec(-5.0f64..5.0, 1..5),
        ) {
            let mut lp = LinearProgram::minimize(c.clone());
            for j in 0..c.len() {
                lp.set_bounds(j, -1.0, 2.0);
            }
            let sol = solve(&lp).unwrap();
            let best: f64 = c.iter().map(|&cj| (-cj).min(2.0 * cj)).sum();
            prop_assert!((sol.objective_value - best).abs() < 1e-9);
        }
    }
}
