use proptest::prelude::*;

use uq_online::online_search::{
    drcr_oracle_search, hard_instance, pfa_run, solve_pfa, worst_case_alpha,
    worst_case_protection,
};
use uq_online::{Pip, SearchInstance};

fn search_pip() -> impl Strategy<Value = Pip> {
    (1.0f64..4.0, 1.0f64..4.0, 0.0f64..=1.0)
        .prop_map(|(a, b, d)| Pip::new(a.min(b), a.max(b), d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certificate_is_confirmed_by_enumeration(pip in search_pip()) {
        let s = solve_pfa(&pip, 1.0, 4.0, 0.1).unwrap();
        let o = drcr_oracle_search(&s.protection, &pip).unwrap();
        prop_assert!(o >= s.drcr - 1e-6);
        prop_assert!(o <= s.drcr + 0.1 * 4.0 + 1e-6);
        prop_assert!(o <= s.attained_drcr + 1e-9);
        prop_assert!((s.drcr - ((1.0 - pip.delta()) * s.eta_hat + pip.delta() * s.gamma_hat)).abs() < 1e-9);
    }

    #[test]
    fn trading_never_beats_the_peak(
        pip in search_pip(),
        prices in proptest::collection::vec(1.0f64..4.0, 1..30),
    ) {
        let s = solve_pfa(&pip, 1.0, 4.0, 0.2).unwrap();
        let inst = SearchInstance::new(prices, 1.0, 4.0).unwrap();
        let r = pfa_run(&s.protection, &inst).unwrap();
        prop_assert!(r.alg_value <= r.opt_value + 1e-12);
        prop_assert!(r.alg_value >= 1.0 - 1e-12);
        prop_assert!(r.ratio <= s.attained_gamma + 1e-9);
    }

    #[test]
    fn worst_case_policy_is_robust_on_ramps(peak in 1.0f64..4.0) {
        let alpha = worst_case_alpha(1.0, 4.0).unwrap();
        let g = worst_case_protection(1.0, 4.0, 0.01).unwrap();
        let r = pfa_run(&g, &hard_instance(peak, 1.0, 50).unwrap()).unwrap();
        prop_assert!(r.ratio <= alpha * (1.0 + 0.01) + 1e-9);
    }
}

#[test]
fn exact_point_prediction_is_nearly_free() {
    let s = solve_pfa(&Pip::new(3.0, 3.0, 0.0).unwrap(), 1.0, 4.0, 0.05).unwrap();
    assert!((s.drcr - 1.0).abs() < 1e-6, "{}", s.drcr);
}
