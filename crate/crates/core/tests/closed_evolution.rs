mod oracles;

use invosc::classical::trajectory;
use invosc::evolution::{
    action_s, delta_kick_at, evolve_delta_kick, evolve_gaussian, propagator, EvolvedGaussian,
};
use invosc::params::evaluate_initial;
use invosc::{ForceProfile, GaussianPacket, SystemParams};
use num_complex::Complex64;
use oracles::*;

fn acceptance_setup() -> (SystemParams, GaussianPacket, ForceProfile) {
    (
        SystemParams::new(1.0, 1.0).unwrap(),
        GaussianPacket::new(-3.0, 1.0, 1.0).unwrap(),
        ForceProfile::Harmonic {
            amplitude: 0.5,
            omega0: 2.0,
        },
    )
}

fn check_moments(ev: &EvolvedGaussian, xi: f64) {
    let (norm, mean, var) = density_moments(ev);
    assert!((norm - 1.0).abs() < 1e-8, "norm {norm}");
    assert!((mean - xi).abs() < 1e-8, "mean {mean} vs {xi}");
    assert!(
        (var / ev.variance() - 1.0).abs() < 1e-8,
        "var {var} vs {}",
        ev.variance()
    );
}

#[test]
fn norm_ehrenfest_and_width_for_random_cases() {
    let mut cases = Cases::new(7);
    for _ in 0..10 {
        let (params, packet, force) = (cases.params(), cases.packet(), cases.force());
        let t = cases.uniform(0.0, 2.0);
        let ev = evolve_gaussian(&params, &packet, &force, t).unwrap();
        let classical = trajectory(&params, packet.x0, packet.p0, &force, t).unwrap();
        assert_eq!(ev.xi, classical.xi);
        check_moments(&ev, classical.xi);
    }
}

#[test]
fn unitarity_at_long_time() {
    let (params, packet, _) = acceptance_setup();
    let ev = evolve_gaussian(&params, &packet, &ForceProfile::Zero, 1.5).unwrap();
    check_moments(&ev, ev.xi);
}

#[test]
fn closed_form_equals_propagator_integral() {
    let mut cases = Cases::new(11);
    for _ in 0..4 {
        let (params, packet, force) = (cases.params(), cases.packet(), cases.force());
        let t = cases.uniform(0.3, 1.5);
        let ev = evolve_gaussian(&params, &packet, &force, t).unwrap();
        let (lo, hi) = ev.support();
        for k in 0..=6 {
            let x = ev.xi + (k as f64 - 3.0) / 3.0 * 0.1 * (hi - lo);
            let direct = ev.evaluate(x);
            let oracle = propagate_by_quadrature(&params, &packet, &force, t, x);
            assert!(
                (direct - oracle).norm() < 1e-8,
                "t={t} x={x}: {direct} vs {oracle}"
            );
        }
    }
}

#[test]
fn kick_action_reproduces_boosted_state() {
    let params = SystemParams::new(1.2, 0.9).unwrap();
    let packet = GaussianPacket::new(0.5, -0.4, 0.8).unwrap();
    let (p, t) = (0.9, 1.1);
    let ev = evolve_delta_kick(&params, &packet, p, t).unwrap();
    for x in [-1.0, 0.0, 1.0, 2.0, 3.0] {
        let oracle = kick_by_quadrature(&params, &packet, p, t, x);
        assert!((ev.evaluate(x) - oracle).norm() < 1e-8);
    }
}

#[test]
fn propagator_semigroup() {
    let params = SystemParams::new(1.0, 1.0).unwrap();
    for force in [ForceProfile::Zero, ForceProfile::Constant { amplitude: 0.7 }] {
        for (x, x1) in [(0.0, 0.0), (1.3, -0.4), (-2.0, 0.9)] {
            let direct = propagator(&params, x, 0.6, x1, 0.0, &force).unwrap().value;
            let composed = chapman_kolmogorov(&params, &force, x, 0.6, 0.3, x1, 0.0);
            let err = (composed - direct).norm() / direct.norm();
            assert!(err < 1e-6, "{force:?} x={x} x1={x1}: {err:e}");
        }
    }
}

#[test]
fn action_is_linear_in_small_force() {
    let params = SystemParams::new(1.0, 1.0).unwrap();
    let (x, t, x1) = (0.8, 1.0, -0.3);
    let free = action_s(&params, x, t, x1, 0.0, &ForceProfile::Zero).unwrap();
    let shift = |f: f64| {
        action_s(
            &params,
            x,
            t,
            x1,
            0.0,
            &ForceProfile::Harmonic {
                amplitude: f,
                omega0: 1.5,
            },
        )
        .unwrap()
            - free
    };
    let (d1, d2) = (shift(1e-3), shift(5e-4));
    assert!(d1.abs() > 0.0);
    assert!((d1 / d2 - 2.0).abs() < 1e-3, "ratio {}", d1 / d2);
}

#[test]
fn matches_grid_oracle() {
    let (params, packet, force) = acceptance_setup();
    let devs = grid_deviations(
        &params,
        &force,
        |x| evaluate_initial(&packet, &params, x),
        |x, t| evolve_gaussian(&params, &packet, &force, t).unwrap().evaluate(x),
        &[0.5, 1.0, 1.5, 2.0],
        (-40.0, 40.0, 4096),
        1e-3,
    );
    for d in devs {
        assert!(d < 1e-3, "deviation {d:e}");
    }
}

#[test]
fn grid_oracle_is_second_order() {
    let (params, packet, force) = acceptance_setup();
    let dev = |dt| {
        grid_deviations(
            &params,
            &force,
            |x| evaluate_initial(&packet, &params, x),
            |x, t| evolve_gaussian(&params, &packet, &force, t).unwrap().evaluate(x),
            &[1.0],
            (-40.0, 40.0, 4096),
            dt,
        )[0]
    };
    let ratio = dev(0.02) / dev(0.01);
    assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn kicked_packet_matches_grid_oracle() {
    let params = SystemParams::new(1.0, 1.0).unwrap();
    let packet = GaussianPacket::new(-1.0, 0.2, 1.0).unwrap();
    let p = 1.0;
    let boosted = packet.boosted(p);
    let ev = evolve_delta_kick(&params, &packet, p, 1.0).unwrap();
    let expected_xi = packet.x0 * 1f64.cosh() + (packet.p0 + p) * 1f64.sinh();
    assert_eq!(ev.xi, expected_xi);
    let devs = grid_deviations(
        &params,
        &ForceProfile::Zero,
        |x| evaluate_initial(&boosted, &params, x),
        |x, _| ev.evaluate(x),
        &[1.0],
        (-40.0, 40.0, 4096),
        1e-3,
    );
    assert!(devs[0] < 1e-3, "deviation {:e}", devs[0]);
}

#[test]
fn late_kick_moments_and_grid() {
    let params = SystemParams::new(1.0, 1.0).unwrap();
    let packet = GaussianPacket::new(0.3, -0.5, 0.9).unwrap();
    let (p, t1, t) = (0.8, 0.4, 1.2);
    let ev = delta_kick_at(&params, &packet, p, t1, t).unwrap();
    let before = trajectory(&params, packet.x0, packet.p0, &ForceProfile::Zero, t1).unwrap();
    let tau = t - t1;
    let xi = before.xi * tau.cosh() + (before.xi_dot + p) * tau.sinh();
    assert!((ev.xi - xi).abs() < 1e-14);
    check_moments(&ev, xi);

    // grid: evolve to t1, multiply by e^{ipx}, evolve on
    let first = grid_deviations(
        &params,
        &ForceProfile::Zero,
        |x| evaluate_initial(&packet, &params, x),
        |x, s| {
            evolve_gaussian(&params, &packet, &ForceProfile::Zero, s)
                .unwrap()
                .evaluate(x)
        },
        &[t1],
        (-40.0, 40.0, 4096),
        1e-3,
    );
    assert!(first[0] < 1e-3);
    let at_kick = evolve_gaussian(&params, &packet, &ForceProfile::Zero, t1).unwrap();
    let mut grid = invosc::numerics::GridState::from_fn(-40.0, 40.0, 4096, t1, |x| {
        at_kick.evaluate(x) * Complex64::from_polar(1.0, p * x)
    })
    .unwrap();
    grid = invosc::numerics::schrodinger_grid_evolve(&params, &grid, &ForceProfile::Zero, t, 1e-3, None)
        .unwrap();
    assert!(grid.relative_l2_deviation(|x| ev.evaluate(x)) < 1e-3);
}
