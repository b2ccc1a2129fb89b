//! The data-producing subcommands. Sweeps run on the ambient rayon pool;
//! rows are collected in input order.

use std::path::Path;

use invosc::barrier::{
    asymptotic_prefactor, asymptotic_prefactor_printed, averaged_transmission,
    averaged_transmission_asymptotic, barrier_potential, transmission_exact, transmission_jwkb,
};
use invosc::evolution::{delta_kick_at, evolve_gaussian, EvolvedGaussian};
use invosc::numerics::integrate_adaptive;
use invosc::open_system::{
    characteristic_coefficients, discriminant_boundary, mean_trajectory, solve_poles, variance_terms,
    GreenFunction, InitialMoments, RootClass,
};
use invosc::{Error, ForceProfile, SystemParams};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{linspace, BoundaryConfig, RunConfig};
use crate::output::{json, ComplexJson, Csv};
use crate::{CliError, Outcome, EXIT_NUMERICAL};

const EVOLVE_COLUMNS: [&str; 7] = [
    "t",
    "xi",
    "xi_dot",
    "re_gamma",
    "im_gamma",
    "variance",
    "norm_check",
];

fn sample_times(config: &RunConfig) -> Vec<f64> {
    let t = &config.times;
    linspace(t.start, t.stop, t.count)
}

/// `∫|ψ|²dx` over the packet support.
fn norm_check(ev: &EvolvedGaussian) -> Result<f64, CliError> {
    let (lo, hi) = ev.support();
    Ok(integrate_adaptive(|x| ev.density(x), lo, hi, 1e-15, 1e-13)?.value)
}

fn evolve_cells(ev: &EvolvedGaussian) -> Result<Vec<f64>, CliError> {
    Ok(vec![
        ev.t,
        ev.xi,
        ev.xi_dot,
        ev.gamma_factor.re,
        ev.gamma_factor.im,
        ev.variance(),
        norm_check(ev)?,
    ])
}

fn reject_kick_force(force: &ForceProfile) -> Result<(), CliError> {
    if force.is_kick() {
        return Err(CliError::Config(
            "force.kind = delta_kick has no pointwise value; use the `kick` command".into(),
        ));
    }
    Ok(())
}

pub fn evolve(config: &RunConfig, wavefunction: Option<&Path>) -> Result<Outcome, CliError> {
    reject_kick_force(&config.force)?;
    let (params, packet, force) = (&config.system, &config.packet, &config.force);
    let hash = config.sha256();
    let rows = sample_times(config)
        .into_par_iter()
        .map(|t| evolve_cells(&evolve_gaussian(params, packet, force, t)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut csv = Csv::new(&hash, &EVOLVE_COLUMNS);
    rows.iter().for_each(|r| csv.row(r));
    let mut outcome = Outcome::success(csv.finish());

    if let Some(path) = wavefunction {
        let w = &config.wavefunction;
        let ev = evolve_gaussian(params, packet, force, w.t)?;
        let mut dump = Csv::new(&hash, &["x", "re_psi", "im_psi", "density"]);
        for x in linspace(w.x_min, w.x_max, w.count) {
            let psi = ev.evaluate(x);
            dump.row(&[x, psi.re, psi.im, psi.norm_sqr()]);
        }
        outcome.extra_files.push((path.to_path_buf(), dump.finish()));
    }
    Ok(outcome)
}

/// Free evolution with `p·δ(t − t1)`; before `t1` the packet is unkicked.
pub fn kick(config: &RunConfig) -> Result<Outcome, CliError> {
    let (params, packet) = (&config.system, &config.packet);
    let (p, t1) = (config.kick.p, config.kick.t1);
    let boosted_momentum = packet.p0 + p;
    let rows = sample_times(config)
        .into_par_iter()
        .map(|t| {
            let ev = if t < t1 {
                evolve_gaussian(params, packet, &ForceProfile::Zero, t)?
            } else {
                delta_kick_at(params, packet, p, t1, t)?
            };
            let mut cells = evolve_cells(&ev)?;
            cells.push(boosted_momentum);
            Ok(cells)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut header = EVOLVE_COLUMNS.to_vec();
    header.push("P");
    let mut csv = Csv::new(&config.sha256(), &header);
    rows.iter().for_each(|r| csv.row(r));
    Ok(Outcome::success(csv.finish()))
}

pub fn tunnel(config: &RunConfig) -> Result<Outcome, CliError> {
    let tu = &config.tunnel;
    let eps = tu.epsilon;
    let betas = linspace(tu.beta_min, tu.beta_max, tu.beta_count);
    let rows = betas
        .par_iter()
        .map(|&beta| {
            let mut cells = vec![
                Some(beta),
                Some(transmission_jwkb(eps, beta)?),
                Some(transmission_exact(eps, beta)?),
                Some(averaged_transmission(eps, beta)?),
            ];
            if beta > 0.0 && beta < 1.0 {
                cells.push(Some(asymptotic_prefactor(eps, beta)?));
                cells.push(Some(averaged_transmission_asymptotic(eps, beta)?));
                cells.push(Some(asymptotic_prefactor_printed(eps, beta)?));
            } else {
                cells.extend([None, None, None]);
            }
            Ok(cells)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let header = [
        "beta",
        "w_jwkb",
        "w_exact",
        "w_avg_quadrature",
        "A_prefactor",
        "w_avg_asymptotic",
        "A_prefactor_printed",
    ];
    let mut csv = Csv::new(&config.sha256(), &header);
    let mut warnings = Vec::new();
    for (beta, cells) in betas.iter().zip(&rows) {
        if cells[4].is_none() {
            warnings.push(format!(
                "beta = {beta}: asymptotic average needs 0 < beta < 1, columns left empty"
            ));
        }
        csv.row_opt(cells);
    }
    let mut outcome = Outcome::success(csv.finish());
    outcome.warnings = warnings;
    Ok(outcome)
}

/// `V(ξ)` for each configured force, stacked in the order given.
pub fn barrier_profile(config: &RunConfig) -> Result<Outcome, CliError> {
    let b = &config.tunnel.barrier;
    let params = SystemParams::new(b.omega, config.system.hbar)?;
    let xis = linspace(b.xi_min, b.xi_max, b.xi_count);
    let mut csv = Csv::new(&config.sha256(), &["F", "xi", "V"]);
    for &force in &b.forces {
        for &xi in &xis {
            csv.row(&[force, xi, barrier_potential(&params, b.xi0, force, xi)]);
        }
    }
    Ok(Outcome::success(csv.finish()))
}

#[derive(Debug, Serialize)]
struct SumRules {
    #[serde(rename = "sumR")]
    sum_r: ComplexJson,
    #[serde(rename = "sumRs")]
    sum_rs: ComplexJson,
    #[serde(rename = "sumRs2")]
    sum_rs2: ComplexJson,
}

#[derive(Debug, Serialize)]
struct PolesReport<'a> {
    config_sha256: String,
    a: f64,
    b: f64,
    q: f64,
    p: f64,
    #[serde(rename = "D")]
    discriminant: f64,
    root_class: RootClass,
    poles: Vec<ComplexJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residues: Option<Vec<ComplexJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sum_rules: Option<SumRules>,
    config: &'a RunConfig,
}

pub fn open_poles(config: &RunConfig) -> Result<Outcome, CliError> {
    let (params, bath) = (&config.system, &config.bath);
    let c = characteristic_coefficients(params, bath);
    let mut report = PolesReport {
        config_sha256: config.sha256(),
        a: c.a,
        b: c.b,
        q: c.q,
        p: c.p,
        discriminant: c.discriminant,
        root_class: RootClass::DegenerateReal,
        poles: Vec::new(),
        residues: None,
        sum_rules: None,
        config,
    };
    match solve_poles(params, bath) {
        Ok(dec) => {
            let [r0, r1, r2] = dec.sum_rules();
            report.root_class = dec.root_class;
            report.poles = dec.poles.iter().map(|&s| s.into()).collect();
            report.residues = Some(dec.residues.iter().map(|&r| r.into()).collect());
            report.sum_rules = Some(SumRules {
                sum_r: r0.into(),
                sum_rs: r1.into(),
                sum_rs2: r2.into(),
            });
            Ok(Outcome::success(json(&report)))
        }
        Err(err @ Error::DegeneratePoles { poles, .. }) => {
            report.poles = poles.iter().map(|&s| s.into()).collect();
            Ok(Outcome {
                body: json(&report),
                extra_files: Vec::new(),
                warnings: vec![err.to_string()],
                exit_code: EXIT_NUMERICAL,
            })
        }
        Err(err) => Err(err.into()),
    }
}

/// Parses `--boundary A_MIN A_MAX N` into the config.
pub fn apply_boundary_args(mut config: RunConfig, args: &[String]) -> Result<RunConfig, CliError> {
    let bad = |what: &str, v: &str| CliError::Config(format!("--boundary {what} `{v}` is not a number"));
    let [lo, hi, n] = args else {
        return Err(CliError::Config("--boundary takes A_MIN A_MAX N".into()));
    };
    config.boundary = BoundaryConfig {
        a_min: lo.parse().map_err(|_| bad("A_MIN", lo))?,
        a_max: hi.parse().map_err(|_| bad("A_MAX", hi))?,
        count: n.parse().map_err(|_| bad("N", n))?,
    };
    config.validate()?;
    Ok(config)
}

/// The critical line `D(a, b) = 0`.
pub fn boundary(config: &RunConfig) -> Result<Outcome, CliError> {
    let bd = &config.boundary;
    let rows = linspace(bd.a_min, bd.a_max, bd.count)
        .into_par_iter()
        .map(|a| Ok([a, discriminant_boundary(a)?]))
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut csv = Csv::new(&config.sha256(), &["a", "b_critical"]);
    rows.iter().for_each(|r| csv.row(r));
    Ok(Outcome::success(csv.finish()))
}

fn require_damping(gamma: f64) -> Result<(), CliError> {
    if gamma > 0.0 {
        return Ok(());
    }
    Err(Error::InvalidParameter {
        name: "gamma",
        reason: "the open-system commands need bath.gamma > 0".into(),
    }
    .into())
}

pub fn open_evolve(config: &RunConfig) -> Result<Outcome, CliError> {
    let (params, bath, packet, force) = (&config.system, &config.bath, &config.packet, &config.force);
    require_damping(bath.gamma)?;
    reject_kick_force(force)?;
    let g = GreenFunction::new(params, bath)?;
    let moments = InitialMoments::from_packet(params, packet);
    let rows = sample_times(config)
        .into_par_iter()
        .map(|t| {
            let mean = mean_trajectory(&g, packet.x0, packet.p0, force, t)?;
            let (dynamic, noise) = variance_terms(&g, bath, params, &moments, t)?;
            Ok([
                t,
                g.value(t),
                g.derivative(t),
                mean,
                dynamic,
                noise,
                dynamic + noise,
            ])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let header = [
        "t",
        "G",
        "G_dot",
        "mean_x",
        "variance_dynamic",
        "variance_noise",
        "variance_total",
    ];
    let mut csv = Csv::new(&config.sha256(), &header);
    rows.iter().for_each(|r| csv.row(r));
    Ok(Outcome::success(csv.finish()))
}
