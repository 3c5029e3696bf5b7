//! Standard-normal sampling and quantiles from uniform primitives.

use rand::Rng;
use std::f64::consts::PI;

/// Standard-normal CDF from the series
/// `Φ(x) = 1/2 + φ(x) Σ x^{2n+1} / (1·3·…·(2n+1))`.
pub fn normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= -10.0 {
        return 0.0;
    }
    if x >= 10.0 {
        return 1.0;
    }
    let mut term = x;
    let mut sum = x;
    let x2 = x * x;
    let mut n = 1.0;
    while term.abs() > 1e-17 * sum.abs().max(1e-300) {
        term *= x2 / (2.0 * n + 1.0);
        sum += term;
        n += 1.0;
    }
    let density = (-0.5 * x2).exp() / (2.0 * PI).sqrt();
    (0.5 + density * sum).clamp(0.0, 1.0)
}

/// Inverse of [`normal_cdf`] by bisection on `[-10, 10]`.
pub fn normal_quantile(p: f64) -> f64 {
    if !(p > 0.0 && p < 1.0) {
        return if p <= 0.0 { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    let (mut lo, mut hi) = (-10.0f64, 10.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if normal_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Two-sided interval half-width multiplier for the given coverage.
pub fn coverage_z(confidence: f64) -> f64 {
    normal_quantile((1.0 + confidence) / 2.0)
}

/// One standard-normal draw by Box-Muller. Always consumes two uniforms.
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cdf_reference_points() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-14);
        assert!((normal_cdf(-1.959_963_984_540_054) - 0.025).abs() < 1e-14);
        assert!(normal_cdf(-9.0) < 1e-15 && normal_cdf(9.0) > 1.0 - 1e-15);
    }

    #[test]
    fn ninety_percent_interval() {
        let z = coverage_z(0.90);
        assert!((z - 1.644_853_626_951_472_2).abs() < 1e-12);
        assert!((z - 1.6449).abs() < 1e-4);
    }

    #[test]
    fn quantile_inverts_cdf() {
        for &p in &[1e-6, 0.01, 0.3, 0.5, 0.77, 0.999] {
            assert!((normal_cdf(normal_quantile(p)) - p).abs() < 1e-12 * p.max(1e-3));
        }
    }

    #[test]
    fn box_muller_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 50_000;
        let xs: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.02 && (var - 1.0).abs() < 0.03);
    }
}
