mod oracles;

use invosc::numerics::{integrate_adaptive, langevin_ode_oracle};
use invosc::open_system::*;
use invosc::{ForceProfile, GaussianPacket, SystemParams};
use oracles::Cases;

fn green(omega: f64, wd: f64, gamma: f64, kt: f64) -> (SystemParams, BathParams, GreenFunction) {
    let params = SystemParams::new(omega, 1.0).unwrap();
    let bath = BathParams::new(gamma, wd, kt).unwrap();
    let g = GreenFunction::new(&params, &bath).unwrap();
    (params, bath, g)
}

fn max_relative_ode_deviation(omega: f64, wd: f64, gamma: f64) -> f64 {
    let (params, bath, g) = green(omega, wd, gamma, 0.0);
    let samples = langevin_ode_oracle(&params, &bath, 5.0 / omega, 1e-3).unwrap();
    samples
        .times()
        .zip(&samples.values)
        .skip(1)
        .map(|(t, &v)| (g.value(t) - v).abs() / v.abs())
        .fold(0.0, f64::max)
}

#[test]
fn residue_green_function_matches_ode() {
    assert!(max_relative_ode_deviation(1.0, 10.0, 0.5) < 1e-6);
    assert!(max_relative_ode_deviation(1.0, 2.0, 5.0) < 1e-6);
}

#[test]
fn derivative_matches_ode_velocity() {
    let (params, bath, g) = green(1.0, 10.0, 0.5, 0.0);
    let samples = langevin_ode_oracle(&params, &bath, 3.0, 1e-3).unwrap();
    for (t, &v) in samples.times().zip(&samples.derivatives).step_by(100) {
        assert!((g.derivative(t) - v).abs() < 1e-8 * v.abs().max(1.0));
    }
}

#[test]
fn mean_motion_ignores_temperature() {
    let force = ForceProfile::Constant { amplitude: 0.3 };
    let mut means = Vec::new();
    for kt in [0.0, 1.0, 5.0] {
        let (_, bath, g) = green(1.0, 10.0, 0.5, kt);
        let g2 =
            GreenFunction::new(&SystemParams::default(), &bath.with_mode(SpectrumMode::Classical)).unwrap();
        assert_eq!(g, g2);
        means.push(mean_trajectory(&g, 0.2, 0.1, &force, 1.5).unwrap());
    }
    assert!(means.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn harmonic_mean_equals_quadrature() {
    let (_, _, g) = green(1.0, 10.0, 0.5, 0.0);
    let (f, w0) = (0.1, 0.2);
    let force = ForceProfile::Harmonic {
        amplitude: f,
        omega0: w0,
    };
    for k in 0..=30 {
        let t = 0.1 * k as f64;
        let closed = mean_trajectory(&g, 0.0, 0.0, &force, t).unwrap();
        let quad = integrate_adaptive(|u| g.value(t - u) * f * (w0 * u).sin(), 0.0, t, 1e-16, 1e-13)
            .unwrap()
            .value;
        assert!((closed - quad).abs() < 1e-8);
    }
}

#[test]
fn variance_is_positive_on_random_scan() {
    let mut cases = Cases::new(23);
    for _ in 0..20 {
        let params = SystemParams::new(cases.uniform(0.3, 2.0), cases.uniform(0.3, 2.0)).unwrap();
        let bath = BathParams::new(
            cases.uniform(0.05, 3.0),
            cases.uniform(0.5, 15.0),
            cases.uniform(0.0, 3.0),
        )
        .unwrap();
        let g = match GreenFunction::new(&params, &bath) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let sx = cases.uniform(0.3, 2.0);
        let var_x = sx * sx;
        let sym = cases.uniform(-1.0, 1.0);
        // var_p chosen so the state is physical
        let var_p = (0.25 * params.hbar * params.hbar + sym * sym) / var_x * cases.uniform(1.0, 2.0);
        let m = InitialMoments::new(&params, 0.0, 0.0, var_x, var_p, sym).unwrap();
        for t in [0.2, 1.0, 2.5] {
            let v = general_variance(&g, &bath, &params, &m, t).unwrap();
            assert!(v > 0.0, "{params:?} {bath:?} {m:?} t={t}: {v}");
        }
    }
}

#[test]
fn general_variance_reduces_to_packet_form() {
    let (params, bath, g) = green(1.0, 10.0, 0.5, 1.0);
    let packet = GaussianPacket::new(0.4, -0.2, 0.7).unwrap();
    let m = InitialMoments::from_packet(&params, &packet);
    for t in [0.0, 0.8, 2.0] {
        assert_eq!(
            general_variance(&g, &bath, &params, &m, t).unwrap(),
            displacement_variance(&g, &bath, &params, &packet, t).unwrap()
        );
    }
}

#[test]
fn tiny_damping_poles() {
    let (params, bath) = (SystemParams::default(), BathParams::new(1e-9, 10.0, 0.0).unwrap());
    let dec = solve_poles(&params, &bath).unwrap();
    let mut re: Vec<f64> = dec.poles.iter().map(|s| s.re).collect();
    re.sort_by(|a, b| a.total_cmp(b));
    for (s, e) in re.iter().zip([-10.0, -1.0, 1.0]) {
        assert!((s - e).abs() < 1e-8);
    }
}

#[test]
fn boundary_curve_has_vanishing_discriminant() {
    for k in 0..100 {
        let a = 0.5 + 19.5 * k as f64 / 99.0;
        let b = discriminant_boundary(a).unwrap();
        assert!(
            CubicCoefficients::from_ab(a, b).discriminant.abs() < 1e-10,
            "a={a}"
        );
    }
}
