//! Closed-form deterministic policies in the continuous-time model.

use crate::error::{Error, Result};
use crate::types::Pip;

pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

/// Smallest trade-off parameter accepted by [`la_purohit_buy_day`].
pub const MIN_LAMBDA: f64 = 1e-6;

fn check_delta(delta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&delta) {
        Ok(())
    } else {
        Err(Error::invalid(format!("delta {delta} outside [0, 1]")))
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive, got {v}")))
    }
}

/// Best DRCR achievable with a point prediction when the horizon lies far
/// beyond the break-even point.
pub fn chi(delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(if delta <= 0.5 {
        1.0 + 2.0 * (delta * (1.0 - delta)).sqrt()
    } else {
        2.0
    })
}

/// Trade-off parameter `min{√(δ/(1-δ)), 1}`; equals 1 at `δ = 1`.
pub fn meta_lambda(delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if delta >= 0.5 {
        return Ok(1.0);
    }
    Ok((delta / (1.0 - delta)).sqrt())
}

/// Buy day of the classic prediction-following rule: `B/λ` when the
/// prediction is below `B`, `B·λ` otherwise. `λ` is clipped to
/// `[MIN_LAMBDA, 1]`.
pub fn la_purohit_buy_day(prediction: f64, lambda: f64, buy_cost: f64) -> f64 {
    let lambda = lambda.clamp(MIN_LAMBDA, 1.0);
    if prediction < buy_cost {
        buy_cost / lambda
    } else {
        buy_cost * lambda
    }
}

/// DRCR of the best deterministic policy whose interval straddles `B`,
/// as a function of the lower end `ℓ`.
pub fn zeta(delta: f64, lower: f64, buy_cost: f64) -> Result<f64> {
    check_delta(delta)?;
    check_positive("interval lower bound", lower)?;
    check_positive("buy cost", buy_cost)?;
    let r = buy_cost / lower;
    Ok(if delta < lower / (lower + buy_cost) {
        delta + (1.0 - delta) * r + 2.0 * (delta * (1.0 - delta) * r).sqrt()
    } else {
        1.0 + r
    })
}

/// Optimal deterministic buy time for a point prediction `P`.
///
/// Ties between buying early and waiting until `P` go to buying early.
pub fn dsr_buy_day(prediction: f64, delta: f64, buy_cost: f64) -> Result<f64> {
    check_positive("prediction", prediction)?;
    check_positive("buy cost", buy_cost)?;
    let lambda = meta_lambda(delta)?;
    let b = buy_cost;
    Ok(if prediction < b {
        b
    } else if prediction > GOLDEN_RATIO * b {
        b * lambda
    } else if chi(delta)? <= delta + prediction / b {
        b * lambda
    } else {
        prediction
    })
}

/// DRCR attained by [`dsr_buy_day`].
pub fn dsr_drcr(prediction: f64, delta: f64, buy_cost: f64) -> Result<f64> {
    check_positive("prediction", prediction)?;
    check_positive("buy cost", buy_cost)?;
    let chi = chi(delta)?;
    let b = buy_cost;
    Ok(if prediction < b {
        1.0 + delta
    } else if prediction <= GOLDEN_RATIO * b {
        chi.min(delta + prediction / b)
    } else {
        chi
    })
}

fn check_pip(pip: &Pip, buy_cost: f64) -> Result<()> {
    check_positive("interval lower bound", pip.lower())?;
    check_positive("buy cost", buy_cost)
}

/// Optimal deterministic buy time for an interval prediction.
pub fn dsr_pip_buy_day(pip: &Pip, buy_cost: f64) -> Result<f64> {
    check_pip(pip, buy_cost)?;
    let (l, u, delta, b) = (pip.lower(), pip.upper(), pip.delta(), buy_cost);
    if u < b {
        return Ok(b);
    }
    if b < l {
        return Ok(if chi(delta)? <= delta + u / b {
            b * meta_lambda(delta)?
        } else {
            u
        });
    }
    let zeta = zeta(delta, l, b)?;
    let wait = delta + u / b;
    Ok(if zeta >= 2.0 && wait >= 2.0 {
        b
    } else if zeta <= wait {
        // At δ = 1 the ratio is +∞ and the cap applies.
        l * (b * delta / (l * (1.0 - delta))).sqrt().min(1.0)
    } else {
        u
    })
}

/// DRCR attained by [`dsr_pip_buy_day`].
pub fn dsr_pip_drcr(pip: &Pip, buy_cost: f64) -> Result<f64> {
    check_pip(pip, buy_cost)?;
    let (l, u, delta, b) = (pip.lower(), pip.upper(), pip.delta(), buy_cost);
    if u < b {
        return Ok(1.0 + delta);
    }
    if b < l {
        return Ok(chi(delta)?.min(delta + u / b));
    }
    Ok(zeta(delta, l, b)?.min(delta + u / b).min(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    fn pip(l: f64, u: f64, d: f64) -> Pip {
        Pip::new(l, u, d).unwrap()
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(0.0).unwrap(), 1.0);
        assert_eq!(chi(0.5).unwrap(), 2.0);
        assert!(close(chi(0.2).unwrap(), 1.0 + 2.0 * 0.16f64.sqrt()));
        assert!(close(chi(0.2).unwrap(), 1.8));
        assert_eq!(chi(0.9).unwrap(), 2.0);
        assert!(chi(-0.1).is_err() && chi(1.1).is_err());
    }

    #[test]
    fn lambda_values() {
        assert_eq!(meta_lambda(0.5).unwrap(), 1.0);
        assert!(close(meta_lambda(0.2).unwrap(), 0.5));
        assert_eq!(meta_lambda(1.0).unwrap(), 1.0);
        assert_eq!(meta_lambda(0.0).unwrap(), 0.0);
        assert!(meta_lambda(2.0).is_err());
    }

    #[test]
    fn prediction_following_rule() {
        assert_eq!(la_purohit_buy_day(1.0, 0.5, 2.0), 4.0);
        assert_eq!(la_purohit_buy_day(3.0, 0.5, 2.0), 1.0);
        assert_eq!(la_purohit_buy_day(3.0, 1.0, 2.0), 2.0);
        assert_eq!(la_purohit_buy_day(1.0, 0.0, 2.0), 2.0 / MIN_LAMBDA);
    }

    #[test]
    fn zeta_values() {
        assert!(close(zeta(0.0, 4.0, 2.0).unwrap(), 0.5));
        assert!(close(zeta(1.0, 4.0, 2.0).unwrap(), 1.5));
        let d = 4.0 / 6.0;
        let left = zeta(d - 1e-12, 4.0, 2.0).unwrap();
        let right = zeta(d, 4.0, 2.0).unwrap();
        assert!((left - 1.5).abs() < 1e-6 && close(right, 1.5));
        assert!(zeta(0.5, 0.0, 2.0).is_err());
    }

    #[test]
    fn point_prediction_policy() {
        assert_eq!(dsr_buy_day(1.0, 0.3, 2.0).unwrap(), 2.0);
        assert_eq!(dsr_buy_day(10.0, 0.5, 2.0).unwrap(), 2.0);
        assert_eq!(dsr_buy_day(3.0, 0.0, 2.0).unwrap(), 0.0);
        assert!(close(dsr_drcr(1.0, 0.3, 2.0).unwrap(), 1.3));
        assert!(close(dsr_drcr(3.0, 0.1, 2.0).unwrap(), 1.6));
        assert_eq!(dsr_drcr(4.0, 0.5, 2.0).unwrap(), 2.0);
        assert!(dsr_buy_day(0.0, 0.1, 2.0).is_err());
    }

    #[test]
    fn interval_prediction_policy() {
        let p = pip(1.0, 1.5, 0.2);
        assert_eq!(dsr_pip_buy_day(&p, 2.0).unwrap(), 2.0);
        assert!(close(dsr_pip_drcr(&p, 2.0).unwrap(), 1.2));

        assert_eq!(dsr_pip_drcr(&pip(3.0, 4.0, 0.0), 2.0).unwrap(), 1.0);

        let p = pip(1.0, 4.0, 1.0);
        assert_eq!(dsr_pip_buy_day(&p, 2.0).unwrap(), 2.0);
        assert_eq!(dsr_pip_drcr(&p, 2.0).unwrap(), 2.0);
    }

    #[test]
    fn interval_policy_reduces_to_point_policy() {
        for &p in &[2.5, 3.0, 3.2, 5.0, 8.0] {
            for &d in &[0.0, 0.1, 0.3, 0.6, 1.0] {
                let a = dsr_pip_drcr(&pip(p, p, d), 2.0).unwrap();
                let b = dsr_drcr(p, d, 2.0).unwrap();
                assert!(close(a, b), "P={p} δ={d}: {a} vs {b}");
            }
        }
    }
}
