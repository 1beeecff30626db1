use photonwork::dynamics::closed;
use photonwork::params::SimParams;
use photonwork::thermo::run_cycle;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn population_is_bounded(g in 0.1f64..5.0, d in 0.01f64..20.0, det in -20.0f64..20.0, t in 0.0f64..50.0) {
        let p = SimParams::new(g, d, det);
        let pe = closed::population(&p, t);
        prop_assert!((0.0..=1.0).contains(&pe), "pe = {pe}");
    }

    #[test]
    fn detuning_mirror_flips_work(d in 0.05f64..10.0, det in 0.25f64..10.0) {
        let a = run_cycle(&SimParams::new(1.0, d, det), 1e-10).unwrap();
        let b = run_cycle(&SimParams::new(1.0, d, -det), 1e-10).unwrap();
        prop_assert!((a.w_net + b.w_net).abs() <= a.quad_error + b.quad_error + 1e-9,
            "{} vs {}", a.w_net, b.w_net);
        prop_assert!((a.max_pe - b.max_pe).abs() < 1e-9);
    }

    #[test]
    fn first_law_holds(d in 0.05f64..10.0, det in -10.0f64..10.0) {
        let r = run_cycle(&SimParams::new(1.0, d, det), 1e-10).unwrap();
        prop_assert!((r.w_net + r.q_net).abs() <= 2.0 * r.quad_error + 1e-9);
    }

    #[test]
    fn frequency_and_log_derivative_agree(d in 0.05f64..10.0, det in -10.0f64..10.0, t in 0.05f64..10.0) {
        let p = SimParams::new(1.0, d, det);
        if let (Ok(a), Ok(b)) = (closed::instantaneous_frequency(&p, t), closed::frequency_from_log_derivative(&p, t)) {
            prop_assert!((a - b).abs() < 1e-6 * (1.0 + a.abs()), "{a} vs {b}");
        }
    }
}
