use crate::error::{Error, Result};

/// Relative tolerance under which two grid values are merged.
const MERGE_TOL: f64 = 1e-12;

/// Largest grid accepted, to keep the trading program tractable.
const MAX_GRID_POINTS: usize = 1_000_000;

/// Sorted prices `V_0 < V_1 < ... < V_{K-1}` from `m` to `M` with the
/// interval ends marked. Indices are 0-based: `values()[k_lower()] == ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PriceGrid {
    values: Vec<f64>,
    k_lower: usize,
    k_upper: usize,
    eps: f64,
}

impl PriceGrid {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn k_lower(&self) -> usize {
        self.k_lower
    }

    pub fn k_upper(&self) -> usize {
        self.k_upper
    }

    pub fn lower(&self) -> f64 {
        self.values[self.k_lower]
    }

    pub fn upper(&self) -> f64 {
        self.values[self.k_upper]
    }

    pub fn floor(&self) -> f64 {
        self.values[0]
    }

    pub fn ceiling(&self) -> f64 {
        *self.values.last().expect("grid is nonempty")
    }

    /// Largest relative gap between neighbouring values.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn in_window(&self, k: usize) -> bool {
        (self.k_lower..=self.k_upper).contains(&k)
    }

    /// Index of the largest grid value at or below `v`, if any.
    pub fn index_at_or_below(&self, v: f64) -> Option<usize> {
        let n = self.values.partition_point(|&x| x <= v * (1.0 + MERGE_TOL));
        n.checked_sub(1)
    }

    /// The same grid with the window moved to `[lower, upper]`; both ends
    /// must already be grid values.
    pub fn with_window(&self, lower: f64, upper: f64) -> Result<PriceGrid> {
        let find = |v: f64| {
            self.index_at_or_below(v)
                .filter(|&k| same(self.values[k], v))
                .ok_or_else(|| Error::invalid(format!("{v} is not a grid value")))
        };
        let (k_lower, k_upper) = (find(lower)?, find(upper)?);
        if k_lower > k_upper {
            return Err(Error::invalid(format!("interval [{lower}, {upper}] is reversed")));
        }
        Ok(PriceGrid {
            k_lower,
            k_upper,
            ..self.clone()
        })
    }
}

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= MERGE_TOL * a.abs().max(b.abs())
}

/// Grid on explicit strictly increasing `values`; `lower` and `upper` must
/// be among them.
pub fn grid_from_points(values: &[f64], lower: f64, upper: f64) -> Result<PriceGrid> {
    if values.is_empty() || !(values[0] > 0.0) {
        return Err(Error::invalid("grid needs positive values"));
    }
    if values.windows(2).any(|w| !(w[0] < w[1])) || !values.iter().all(|v| v.is_finite()) {
        return Err(Error::invalid("grid values must be finite and strictly increasing"));
    }
    let eps = values
        .windows(2)
        .map(|w| w[1] / w[0] - 1.0)
        .fold(0.0, f64::max);
    let grid = PriceGrid {
        values: values.to_vec(),
        k_lower: 0,
        k_upper: 0,
        eps,
    };
    grid.with_window(lower, upper)
}

/// Geometric grid `m(1+ε)^k` up to `M`, merged with `ℓ`, `u` and `M`.
pub fn build_grid(m: f64, big_m: f64, lower: f64, upper: f64, eps: f64) -> Result<PriceGrid> {
    build_grid_with_points(m, big_m, lower, upper, eps, &[])
}

/// Like [`build_grid`], with additional points inside `[m, M]` so that
/// several intervals can share one grid.
pub fn build_grid_with_points(
    m: f64,
    big_m: f64,
    lower: f64,
    upper: f64,
    eps: f64,
    extra: &[f64],
) -> Result<PriceGrid> {
    if !(m > 0.0) || !(big_m >= m) || !big_m.is_finite() {
        return Err(Error::invalid(format!("price bounds need 0 < m <= M, got [{m}, {big_m}]")));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::invalid(format!("grid eps must be positive, got {eps}")));
    }
    if !(m <= lower && lower <= upper && upper <= big_m) {
        return Err(Error::invalid(format!(
            "interval [{lower}, {upper}] outside [{m}, {big_m}]"
        )));
    }
    if let Some(x) = extra.iter().find(|&&x| !(m <= x && x <= big_m)) {
        return Err(Error::invalid(format!("grid point {x} outside [{m}, {big_m}]")));
    }

    let step = (1.0 + eps).ln();
    let mut count = ((big_m / m).ln() / step).floor().max(0.0) as usize;
    if count > MAX_GRID_POINTS {
        return Err(Error::invalid(format!("grid eps {eps} gives too many points")));
    }
    let point = |k: usize| m * (1.0 + eps).powi(k as i32);
    while point(count + 1) <= big_m {
        count += 1;
    }
    while count > 0 && point(count) > big_m {
        count -= 1;
    }

    // Exact user-supplied values win over geometric ones when merging.
    let mut raw: Vec<(f64, bool)> = (0..=count).map(|k| (point(k), k == 0)).collect();
    raw.extend([(lower, true), (upper, true), (big_m, true)]);
    raw.extend(extra.iter().map(|&x| (x, true)));
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut values: Vec<f64> = Vec::with_capacity(raw.len());
    let mut exact: Vec<bool> = Vec::with_capacity(raw.len());
    for (v, is_exact) in raw {
        match values.last() {
            Some(&last) if same(last, v) => {
                if is_exact && !*exact.last().unwrap() {
                    *values.last_mut().unwrap() = v;
                    *exact.last_mut().unwrap() = true;
                }
            }
            _ => {
                values.push(v);
                exact.push(is_exact);
            }
        }
    }
    let grid = PriceGrid {
        values,
        k_lower: 0,
        k_upper: 0,
        eps,
    };
    grid.with_window(lower, upper)
}
