use proptest::prelude::*;

use uq_online::ski_rental::{
    drcr_oracle, dsr_pip_drcr, oracle::truncated_lp_drcr, solve_rsr, woa_distribution,
    zeta, RsrCache,
};
use uq_online::Pip;

fn integer_pip() -> impl Strategy<Value = (u64, Pip)> {
    (1u64..=10)
        .prop_flat_map(|b| (Just(b), 1..=3 * b, 0u64..=3 * b, 0.0f64..=1.0))
        .prop_map(|(b, l, width, d)| {
            let u = (l + width).min(3 * b);
            (b, Pip::new(l as f64, u as f64, d).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_program_matches_full_program((b, pip) in integer_pip()) {
        let reduced = solve_rsr(&pip, b).unwrap();
        let full = truncated_lp_drcr(&pip, b, 3 * b.max(pip.upper() as u64)).unwrap();
        prop_assert!((reduced.drcr - full).abs() < 1e-6, "{} vs {}", reduced.drcr, full);
    }

    #[test]
    fn returned_policy_attains_its_value((b, pip) in integer_pip()) {
        let s = solve_rsr(&pip, b).unwrap();
        prop_assert!((drcr_oracle(&s.policy, &pip, b) - s.drcr).abs() < 1e-6);
        prop_assert!(s.eta >= 1.0 - 1e-9 && s.eta <= s.gamma + 1e-9);
        prop_assert!(s.policy.mass().iter().all(|&p| p > 0.0));
    }

    #[test]
    fn randomization_never_hurts((b, pip) in integer_pip()) {
        let s = solve_rsr(&pip, b).unwrap();
        prop_assert!(s.drcr <= dsr_pip_drcr(&pip, b as f64).unwrap() + 1e-9);
        prop_assert!(s.drcr <= drcr_oracle(&woa_distribution(b), &pip, b) + 1e-9);
    }

    #[test]
    fn more_distrust_never_helps((b, pip) in integer_pip(), d2 in 0.0f64..=1.0) {
        let (lo, hi) = if d2 < pip.delta() { (d2, pip.delta()) } else { (pip.delta(), d2) };
        let a = solve_rsr(&pip.with_delta(lo).unwrap(), b).unwrap().drcr;
        let c = solve_rsr(&pip.with_delta(hi).unwrap(), b).unwrap().drcr;
        prop_assert!(a <= c + 1e-9);
    }

    #[test]
    fn zeta_is_continuous_at_its_breakpoint(l in 0.1f64..20.0, b in 0.5f64..20.0) {
        let d = l / (l + b);
        let left = zeta(d - 1e-12, l, b).unwrap();
        let right = zeta(d, l, b).unwrap();
        prop_assert!((left - (l + b) / l).abs() < 1e-5);
        prop_assert!((right - (l + b) / l).abs() < 1e-12);
    }
}

#[test]
fn cache_is_transparent() {
    let mut cached = RsrCache::new(4);
    let mut fresh = RsrCache::disabled(4);
    for (l, u, d) in [(1.0, 3.0, 0.2), (2.0, 9.0, 0.7), (1.0, 3.0, 0.2), (1.0, 3.0, 0.2)] {
        let pip = Pip::new(l, u, d).unwrap();
        assert_eq!(cached.get(&pip).unwrap(), fresh.get(&pip).unwrap());
    }
    assert_eq!(cached.solves(), 2);
    assert_eq!(fresh.solves(), 4);
}
