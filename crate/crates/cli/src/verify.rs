//! `invosc verify`: closed forms against independent brute-force routes.

use invosc::barrier::{averaged_transmission, averaged_transmission_asymptotic};
use invosc::evolution::evolve_gaussian;
use invosc::numerics::{integrate_adaptive, langevin_ode_oracle, schrodinger_grid_evolve, GridState};
use invosc::open_system::GreenFunction;
use invosc::params::evaluate_initial;
use invosc::ForceProfile;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{linspace, RunConfig};
use crate::output::json;
use crate::{CliError, Outcome, EXIT_VERIFY_FAILED};

const ASYMPTOTIC_POINTS: [(f64, f64, f64); 2] = [(10.0, 0.3, 0.15), (30.0, 0.2, 0.08)];
const WINDOW_PROBE: (f64, f64) = (0.7, 2.0);
const WINDOW_TOLERANCE: f64 = 1e-10;
const HARMONIC_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct Report<'a> {
    pub config_sha256: String,
    pub checks: Vec<Check>,
    pub all_pass: bool,
    pub config: &'a RunConfig,
}

type Probe<'a> = Box<dyn Fn() -> Result<f64, CliError> + Send + Sync + 'a>;

pub fn verify(config: &RunConfig, coarse: bool) -> Result<Outcome, CliError> {
    let dt = if coarse {
        config.verify.coarse_dt
    } else {
        config.grid.dt
    };
    let v = &config.verify;
    let mut probes: Vec<(String, f64, Probe)> = vec![
        (
            "closed_form_vs_grid".into(),
            v.grid_tolerance,
            Box::new(move || grid_deviation(config, dt)),
        ),
        (
            "green_vs_ode".into(),
            v.ode_tolerance,
            Box::new(|| green_ode_deviation(config)),
        ),
    ];
    for (eps, beta, tol) in ASYMPTOTIC_POINTS {
        probes.push((
            format!("asymptotic_vs_quadrature_eps{eps}_beta{beta}"),
            tol,
            Box::new(move || {
                let w = averaged_transmission(eps, beta)?;
                Ok(((averaged_transmission_asymptotic(eps, beta)? - w) / w).abs())
            }),
        ));
    }
    probes.push((
        "windowed_transform_vs_quadrature".into(),
        WINDOW_TOLERANCE,
        Box::new(|| window_deviation(config)),
    ));
    probes.push((
        "harmonic_response_vs_quadrature".into(),
        HARMONIC_TOLERANCE,
        Box::new(|| harmonic_deviation(config)),
    ));

    let checks = probes
        .par_iter()
        .map(|(name, tolerance, probe)| {
            let deviation = probe()?;
            Ok(Check {
                name: name.clone(),
                deviation,
                tolerance: *tolerance,
                pass: deviation < *tolerance,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let all_pass = checks.iter().all(|c| c.pass);
    let report = Report {
        config_sha256: config.sha256(),
        checks,
        all_pass,
        config,
    };
    let mut outcome = Outcome::success(json(&report));
    if !all_pass {
        outcome.exit_code = EXIT_VERIFY_FAILED;
    }
    Ok(outcome)
}

/// Largest relative L2 deviation between the closed-form packet and the
/// split-step grid over `verify.grid_times`.
pub fn grid_deviation(config: &RunConfig, dt: f64) -> Result<f64, CliError> {
    let (params, packet, force) = (&config.system, &config.packet, &config.force);
    if force.is_kick() {
        return Err(CliError::Config(
            "verify needs a force with pointwise values".into(),
        ));
    }
    let g = &config.grid;
    let mut times = config.verify.grid_times.clone();
    times.sort_by(f64::total_cmp);
    times.dedup();
    let mut grid = GridState::from_fn(g.x_min, g.x_max, g.n, 0.0, |x| {
        evaluate_initial(packet, params, x)
    })?;
    let mut worst: f64 = 0.0;
    for t in times {
        grid = schrodinger_grid_evolve(params, &grid, force, t, dt, None)?;
        let ev = evolve_gaussian(params, packet, force, t)?;
        worst = worst.max(grid.relative_l2_deviation(|x| ev.evaluate(x)));
    }
    Ok(worst)
}

/// Largest relative deviation of the residue-sum `G(t)` from the RK4
/// memory-kernel integration on `(0, 5/Ω]`.
pub fn green_ode_deviation(config: &RunConfig) -> Result<f64, CliError> {
    let (params, bath) = (&config.system, &config.bath);
    let g = GreenFunction::new(params, bath)?;
    let dt = config.verify.ode_dt;
    let samples = langevin_ode_oracle(params, bath, 5.0 / params.omega, dt)?;
    Ok(samples
        .times()
        .zip(&samples.values)
        .skip(1)
        .map(|(t, &v)| (g.value(t) - v).abs() / v.abs().max(dt))
        .fold(0.0, f64::max))
}

/// `|W − ∫_0^t G e^{−iωu}du| / |W|` at a fixed probe point.
pub fn window_deviation(config: &RunConfig) -> Result<f64, CliError> {
    let g = GreenFunction::new(&config.system, &config.bath)?;
    let (omega, t) = WINDOW_PROBE;
    let closed = g.windowed_transform(omega, t);
    let quad = integrate_adaptive(
        |u| g.value(u) * Complex64::from_polar(1.0, -omega * u),
        0.0,
        t,
        1e-16,
        1e-14,
    )?
    .value;
    Ok((closed - quad).norm() / quad.norm())
}

/// Largest `|closed − ∫G(t−u)F sin ω₀u du|` on `t ∈ [0, 3]`. Uses the
/// configured harmonic force, or `0.5 sin 2t` for other profiles.
pub fn harmonic_deviation(config: &RunConfig) -> Result<f64, CliError> {
    let g = GreenFunction::new(&config.system, &config.bath)?;
    let (amplitude, omega0) = match config.force {
        ForceProfile::Harmonic { amplitude, omega0 } => (amplitude, omega0),
        _ => (0.5, 2.0),
    };
    let mut worst: f64 = 0.0;
    for t in linspace(0.0, 3.0, 31) {
        let closed = g.harmonic_response(amplitude, omega0, t)?;
        let quad = integrate_adaptive(
            |u| g.value(t - u) * amplitude * (omega0 * u).sin(),
            0.0,
            t,
            1e-16,
            1e-13,
        )?
        .value;
        worst = worst.max((closed - quad).abs());
    }
    Ok(worst)
}
