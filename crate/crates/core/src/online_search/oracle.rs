use super::pfa::pfa_run;
use super::protection::ProtectionFunction;
use crate::error::{Error, Result};
use crate::types::{Pip, SearchInstance};

/// Evenly spaced peaks checked by [`drcr_oracle_search`] besides grid points.
pub const ORACLE_EXTRA_PEAKS: usize = 400;

/// Geometric ramp of `steps` prices from `m` up to `peak`, then a crash to `m`.
pub fn hard_instance(peak: f64, m: f64, steps: usize) -> Result<SearchInstance> {
    if steps < 2 {
        return Err(Error::invalid(format!("hard instance needs >= 2 steps, got {steps}")));
    }
    if !(m > 0.0) || !(peak >= m) || !peak.is_finite() {
        return Err(Error::invalid(format!("hard instance needs 0 < m <= V, got m={m}, V={peak}")));
    }
    let growth = peak / m;
    let mut prices: Vec<f64> = (0..steps)
        .map(|i| m * growth.powf(i as f64 / (steps - 1) as f64))
        .collect();
    *prices.last_mut().expect("steps >= 2") = peak;
    prices.push(m);
    SearchInstance::new(prices, m, peak)
}

/// Ratio of running `protection` on the sharpest instance peaking at `peak`:
/// every grid price below the peak, the peak, then `m`.
fn worst_ratio_at(protection: &ProtectionFunction, peak: f64) -> Result<f64> {
    let grid = protection.grid();
    let m = grid.floor();
    let mut prices: Vec<f64> = grid.values().iter().copied().filter(|&v| v < peak).collect();
    prices.push(peak);
    prices.push(m);
    let instance = SearchInstance::new(prices, m, grid.ceiling())?;
    Ok(pfa_run(protection, &instance)?.ratio)
}

/// Brute-force DRCR of a protection function over hard instances.
///
/// Peaks are every grid value, the interval ends and
/// [`ORACLE_EXTRA_PEAKS`] evenly spaced prices in `[m, M]`.
pub fn drcr_oracle_search(protection: &ProtectionFunction, pip: &Pip) -> Result<f64> {
    let grid = protection.grid();
    let (m, big_m) = (grid.floor(), grid.ceiling());
    let mut peaks: Vec<f64> = grid.values().to_vec();
    peaks.extend([pip.lower().clamp(m, big_m), pip.upper().clamp(m, big_m)]);
    let n = ORACLE_EXTRA_PEAKS;
    peaks.extend((0..n).map(|i| m + (big_m - m) * i as f64 / (n - 1) as f64));

    let mut eta: f64 = 1.0;
    let mut outside: f64 = 1.0;
    for v in peaks {
        let r = worst_ratio_at(protection, v)?;
        if pip.contains(v) {
            eta = eta.max(r);
        } else {
            outside = outside.max(r);
        }
    }
    let gamma = eta.max(outside);
    let delta = pip.delta();
    Ok((1.0 - delta) * eta + delta * gamma)
}
