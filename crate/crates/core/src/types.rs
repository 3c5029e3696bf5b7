//! Shared domain values: predictions, instances and ratio samples.

use crate::error::{Error, Result};

/// Probabilistic interval prediction: the critical value lies in
/// `[lower, upper]` with probability at least `1 - delta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pip {
    lower: f64,
    upper: f64,
    delta: f64,
}

impl Pip {
    pub fn new(lower: f64, upper: f64, delta: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::invalid(format!(
                "interval bounds must be finite, got [{lower}, {upper}]"
            )));
        }
        if lower > upper {
            return Err(Error::invalid(format!(
                "interval lower bound {lower} exceeds upper bound {upper}"
            )));
        }
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::invalid(format!("delta {delta} outside [0, 1]")));
        }
        Ok(Pip {
            lower,
            upper,
            delta,
        })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        Pip::new(self.lower, self.upper, delta)
    }

    /// True when both endpoints are whole numbers (the ski-rental domain).
    pub fn is_integral(&self) -> bool {
        self.lower.fract() == 0.0 && self.upper.fract() == 0.0
    }
}

/// Interval `prediction ± error` with miss probability `delta`.
pub fn pip_from_point(prediction: f64, error: f64, delta: f64) -> Result<Pip> {
    if !(error >= 0.0) {
        return Err(Error::invalid(format!(
            "prediction error must be non-negative, got {error}"
        )));
    }
    Pip::new(prediction - error, prediction + error, delta)
}

/// Rounds a real interval outward onto the integers `1..=max_value`.
///
/// The lower end is floored and the upper end ceiled before clamping, so the
/// rounded interval always covers the original one inside the range.
pub fn clamp_pip_to_integer_range(pip: &Pip, max_value: u64) -> Pip {
    let hi = max_value.max(1) as f64;
    let lower = pip.lower.floor().clamp(1.0, hi);
    let upper = pip.upper.ceil().clamp(1.0, hi).max(lower);
    Pip {
        lower,
        upper,
        delta: pip.delta,
    }
}

/// A ski-rental instance: ski for `horizon` days, buying costs `buy_cost`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SkiInstance {
    pub horizon: u64,
    pub buy_cost: u64,
}

impl SkiInstance {
    pub fn new(horizon: u64, buy_cost: u64) -> Result<Self> {
        if horizon == 0 || buy_cost == 0 {
            return Err(Error::invalid(format!(
                "ski instance needs horizon >= 1 and buy cost >= 1, got ({horizon}, {buy_cost})"
            )));
        }
        Ok(SkiInstance { horizon, buy_cost })
    }

    /// Offline optimum `min{N, B}`.
    pub fn offline_cost(&self) -> f64 {
        self.horizon.min(self.buy_cost) as f64
    }

    /// Cost of renting until day `buy_day - 1` and buying on `buy_day`.
    pub fn cost_of_buy_day(&self, buy_day: u64) -> f64 {
        if self.horizon < buy_day {
            self.horizon as f64
        } else {
            (buy_day - 1 + self.buy_cost) as f64
        }
    }

    /// Cost when skis are never bought.
    pub fn cost_of_renting(&self) -> f64 {
        self.horizon as f64
    }
}

/// A one-way trading price sequence with known bounds `[m, M]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchInstance {
    prices: Vec<f64>,
    price_floor: f64,
    price_ceiling: f64,
}

impl SearchInstance {
    pub fn new(prices: Vec<f64>, price_floor: f64, price_ceiling: f64) -> Result<Self> {
        if !(price_floor > 0.0) || !(price_ceiling >= price_floor) || !price_ceiling.is_finite() {
            return Err(Error::invalid(format!(
                "price bounds need 0 < m <= M, got [{price_floor}, {price_ceiling}]"
            )));
        }
        if prices.is_empty() {
            return Err(Error::invalid("price sequence is empty"));
        }
        // Tolerate rounding noise at the bounds.
        let slack = 1e-12 * price_ceiling;
        if let Some(p) = prices
            .iter()
            .find(|p| !(**p >= price_floor - slack && **p <= price_ceiling + slack))
        {
            return Err(Error::invalid(format!(
                "price {p} outside [{price_floor}, {price_ceiling}]"
            )));
        }
        let prices = prices
            .into_iter()
            .map(|p| p.clamp(price_floor, price_ceiling))
            .collect();
        Ok(SearchInstance {
            prices,
            price_floor,
            price_ceiling,
        })
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn price_floor(&self) -> f64 {
        self.price_floor
    }

    pub fn price_ceiling(&self) -> f64 {
        self.price_ceiling
    }

    /// Offline optimum: sell everything at the highest price.
    pub fn max_price(&self) -> f64 {
        self.prices.iter().copied().fold(f64::MIN, f64::max)
    }
}

/// One evaluated run: online value, offline value and their ratio.
///
/// The producer fixes the orientation: `alg/opt` for cost problems and
/// `opt/alg` for profit problems, so the ratio is always `>= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioSample {
    pub alg_value: f64,
    pub opt_value: f64,
    pub ratio: f64,
}

impl RatioSample {
    pub fn cost(alg_value: f64, opt_value: f64) -> Self {
        RatioSample {
            alg_value,
            opt_value,
            ratio: alg_value / opt_value,
        }
    }

    pub fn profit(alg_value: f64, opt_value: f64) -> Self {
        RatioSample {
            alg_value,
            opt_value,
            ratio: opt_value / alg_value,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn point_prediction_to_interval() {
        let p = pip_from_point(5.0, 2.0, 0.1).unwrap();
        assert_eq!((p.lower(), p.upper(), p.delta()), (3.0, 7.0, 0.1));

        let p = pip_from_point(5.0, 0.0, 1.0).unwrap();
        assert_eq!((p.lower(), p.upper(), p.delta()), (5.0, 5.0, 1.0));

        let p = pip_from_point(2.5, 1.2, 0.05).unwrap();
        assert!(close(p.lower(), 1.3) && close(p.upper(), 3.7));
        assert_eq!(p.delta(), 0.05);
    }

    #[test]
    fn point_prediction_rejects_bad_inputs() {
        assert!(pip_from_point(5.0, -1.0, 0.1).is_err());
        assert!(pip_from_point(5.0, 1.0, 1.5).is_err());
        assert!(pip_from_point(5.0, 1.0, -0.1).is_err());
        assert!(Pip::new(3.0, 2.0, 0.1).is_err());
    }

    #[test]
    fn clamping_rounds_outward() {
        let c = |l, u| {
            let p = clamp_pip_to_integer_range(&Pip::new(l, u, 0.1).unwrap(), 8);
            (p.lower(), p.upper(), p.delta())
        };
        assert_eq!(c(1.3, 3.7), (1.0, 4.0, 0.1));
        assert_eq!(c(-2.0, 0.4), (1.0, 1.0, 0.1));
        assert_eq!(c(6.2, 11.0), (6.0, 8.0, 0.1));
        assert_eq!(c(9.5, 12.0), (8.0, 8.0, 0.1));
    }

    #[test]
    fn ski_costs() {
        let inst = SkiInstance::new(1, 2).unwrap();
        assert_eq!(inst.cost_of_buy_day(1), 2.0);
        assert_eq!(inst.cost_of_buy_day(2), 1.0);
        assert_eq!(inst.offline_cost(), 1.0);
        assert!(SkiInstance::new(0, 2).is_err());
    }

    #[test]
    fn search_instance_validation() {
        assert!(SearchInstance::new(vec![], 1.0, 2.0).is_err());
        assert!(SearchInstance::new(vec![3.0], 1.0, 2.0).is_err());
        assert!(SearchInstance::new(vec![1.0], 0.0, 2.0).is_err());
        let s = SearchInstance::new(vec![1.0, 1.5, 1.2], 1.0, 2.0).unwrap();
        assert_eq!(s.max_price(), 1.5);
    }

    proptest! {
        #[test]
        fn clamping_is_idempotent(
            p in -20.0f64..20.0,
            e in 0.0f64..15.0,
            d in 0.0f64..=1.0,
            max in 1u64..30,
        ) {
            let pip = pip_from_point(p, e, d).unwrap();
            let once = clamp_pip_to_integer_range(&pip, max);
            let twice = clamp_pip_to_integer_range(&once, max);
            prop_assert_eq!(once, twice);
            prop_assert!(once.lower() <= once.upper());
            prop_assert!(once.lower() >= 1.0 && once.upper() <= max as f64);
            prop_assert!((0.0..=1.0).contains(&once.delta()));
        }
    }
}
