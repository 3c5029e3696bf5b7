//! Prediction-free and prediction-following baselines.

use super::PurchaseDistribution;

/// The worst-case optimal randomized policy, `e/(e-1)`-competitive as `B`
/// grows: mass on day `j ≤ B` proportional to `((B-1)/B)^(B-j)`.
pub fn woa_distribution(buy_cost: u64) -> PurchaseDistribution {
    let b = buy_cost.max(1);
    let bf = b as f64;
    let r = (bf - 1.0) / bf;
    let norm = bf * (1.0 - r.powf(bf));
    let mass: Vec<f64> = (1..=b).map(|j| r.powf((b - j) as f64) / norm).collect();
    let total: f64 = mass.iter().sum();
    PurchaseDistribution::new((1..=b).collect(), mass.iter().map(|p| p / total).collect())
        .expect("geometric weights form a distribution")
}

/// Follow-the-prediction: buy on day 1 when the prediction reaches `B`,
/// otherwise never buy. `literal` flips the comparison, buying on day 1 only
/// when the prediction is below `B`.
pub fn ftp_buy_day(prediction: f64, buy_cost: f64, literal: bool) -> Option<u64> {
    let buy = if literal {
        prediction < buy_cost
    } else {
        prediction >= buy_cost
    };
    buy.then_some(1)
}
