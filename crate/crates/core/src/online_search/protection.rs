use super::grid::{build_grid, PriceGrid};
use crate::error::{Error, Result};

/// Cumulative selling schedule on a price grid.
///
/// `G(v) = G_k` for `v ∈ [V_k, V_{k+1})`; below `V_0` nothing is committed.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtectionFunction {
    grid: PriceGrid,
    cumulative: Vec<f64>,
}

impl ProtectionFunction {
    /// Accepts values that overshoot `[0, 1]` or decrease by at most `1e-9`
    /// and projects them back.
    pub fn new(grid: PriceGrid, cumulative: Vec<f64>) -> Result<Self> {
        if cumulative.len() != grid.len() {
            return Err(Error::invalid(format!(
                "protection has {} levels for {} grid points",
                cumulative.len(),
                grid.len()
            )));
        }
        let mut prev: f64 = 0.0;
        let mut levels = Vec::with_capacity(cumulative.len());
        for (k, g) in cumulative.into_iter().enumerate() {
            if !g.is_finite() || g < prev - 1e-9 || g > 1.0 + 1e-9 || g < -1e-9 {
                return Err(Error::invalid(format!(
                    "protection level {g} at grid index {k} breaks 0 <= G_0 <= ... <= 1"
                )));
            }
            prev = g.clamp(prev, 1.0);
            levels.push(prev);
        }
        Ok(ProtectionFunction {
            grid,
            cumulative: levels,
        })
    }

    /// Builds `G` from per-point selling masses.
    pub fn from_masses(grid: PriceGrid, masses: &[f64]) -> Result<Self> {
        let mut acc = 0.0;
        let cumulative = masses
            .iter()
            .map(|q| {
                acc += q.max(0.0);
                acc.min(1.0)
            })
            .collect();
        ProtectionFunction::new(grid, cumulative)
    }

    pub fn grid(&self) -> &PriceGrid {
        &self.grid
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    /// `q_k = G_k - G_{k-1}` with `G_{-1} = 0`.
    pub fn masses(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.cumulative
            .iter()
            .map(|&g| {
                let q = g - prev;
                prev = g;
                q
            })
            .collect()
    }

    pub fn level_at(&self, v: f64) -> f64 {
        self.grid
            .index_at_or_below(v)
            .map_or(0.0, |k| self.cumulative[k])
    }

    /// Profit on the worst instance peaking at `V_k`:
    /// `Σ_{i≤k} V_i q_i + (1 - G_k)·m`.
    pub fn hard_profits(&self) -> Vec<f64> {
        let v = self.grid.values();
        let m = self.grid.floor();
        let mut sold = 0.0;
        self.masses()
            .iter()
            .zip(v)
            .zip(&self.cumulative)
            .map(|((q, vk), g)| {
                sold += vk * q;
                sold + (1.0 - g) * m
            })
            .collect()
    }
}

/// Competitive ratio of the worst-case optimal protection function: the
/// root of `α = ln((M - m)/((α - 1)·m))`.
pub fn worst_case_alpha(m: f64, big_m: f64) -> Result<f64> {
    if !(m > 0.0) || !(big_m > m) || !big_m.is_finite() {
        return Err(Error::invalid(format!(
            "worst-case ratio needs 0 < m < M, got [{m}, {big_m}]"
        )));
    }
    let h = |a: f64| a - ((big_m - m) / ((a - 1.0) * m)).ln();
    let (mut lo, mut hi) = (1.0, big_m / m);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Closed-form worst-case optimal level `(1/α) ln((v - m)/((α - 1)·m))`,
/// zero below `α·m` and capped at one.
pub fn worst_case_level(v: f64, m: f64, alpha: f64) -> f64 {
    if v <= alpha * m {
        return 0.0;
    }
    (((v - m) / ((alpha - 1.0) * m)).ln() / alpha).clamp(0.0, 1.0)
}

/// The worst-case optimal protection function sampled on a full-range grid.
pub fn worst_case_protection(m: f64, big_m: f64, grid_eps: f64) -> Result<ProtectionFunction> {
    let alpha = worst_case_alpha(m, big_m)?;
    let grid = build_grid(m, big_m, m, big_m, grid_eps)?;
    let mut levels: Vec<f64> = grid
        .values()
        .iter()
        .map(|&v| worst_case_level(v, m, alpha))
        .collect();
    // The closed form reaches one at M exactly; remove bisection residue.
    *levels.last_mut().expect("grid is nonempty") = 1.0;
    ProtectionFunction::new(grid, levels)
}
