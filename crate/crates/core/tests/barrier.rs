use invosc::barrier::*;
use proptest::prelude::*;

#[test]
fn exact_point_at_suppression() {
    for eps in [1.0, 3.0, 10.0, 100.0] {
        assert_eq!(transmission_exact(eps, 1.0).unwrap(), 0.5);
    }
}

#[test]
fn jwkb_coincides_deep_under_barrier() {
    // ε(1−β)² = 10
    let (eps, beta) = (40.0, 0.5);
    let ratio = transmission_jwkb(eps, beta).unwrap() / transmission_exact(eps, beta).unwrap();
    assert!((1.0..=1.0001).contains(&ratio), "{ratio}");
    for exponent in [10.0, 20.0, 40.0] {
        let r = transmission_jwkb(exponent, 0.0).unwrap() / transmission_exact(exponent, 0.0).unwrap();
        assert!((r - 1.0).abs() < 1e-4);
    }
}

#[test]
fn jwkb_within_five_percent_once_exponent_reaches_five() {
    for (eps, beta) in [(5.0, 0.0), (20.0, 0.5), (8.0, 0.2)] {
        let r = transmission_jwkb(eps, beta).unwrap() / transmission_exact(eps, beta).unwrap();
        assert!((r - 1.0).abs() < 0.05);
    }
}

#[test]
fn asymptotic_agreement_improves_with_depth() {
    let beta = 0.3;
    let errors: Vec<f64> = [10.0, 30.0, 100.0]
        .iter()
        .map(|&eps| {
            let w = averaged_transmission(eps, beta).unwrap();
            ((averaged_transmission_asymptotic(eps, beta).unwrap() - w) / w).abs()
        })
        .collect();
    assert!(errors.windows(2).all(|e| e[1] < e[0]), "{errors:?}");
}

proptest! {
    #[test]
    fn exact_transmission_is_a_probability(eps in 1e-3f64..500.0, beta in 0.0f64..3.0) {
        let t = transmission_exact(eps, beta).unwrap();
        prop_assert!(t > 0.0 || eps * (1.0 - beta).powi(2) > 700.0);
        prop_assert!(t < 1.0);
    }

    #[test]
    fn exact_transmission_monotonicity(eps in 0.1f64..50.0, beta in 0.0f64..0.95, d in 1e-3f64..0.04) {
        prop_assert!(transmission_exact(eps, beta + d).unwrap() > transmission_exact(eps, beta).unwrap());
        prop_assert!(transmission_exact(eps * 1.1, beta).unwrap() < transmission_exact(eps, beta).unwrap());
    }

    #[test]
    fn averaging_never_helps(eps in 0.5f64..40.0, beta in 1e-3f64..0.999) {
        let avg = averaged_transmission(eps, beta).unwrap();
        prop_assert!(avg <= transmission_exact(eps, beta).unwrap());
    }
}

#[test]
fn unforced_average_is_static() {
    for eps in [0.5, 3.0, 30.0] {
        assert_eq!(
            averaged_transmission(eps, 0.0).unwrap(),
            transmission_exact(eps, 0.0).unwrap()
        );
    }
}
