//! Independent reference computations shared by the integration tests and
//! the acceptance suite.
#![allow(dead_code)]

use invosc::evolution::{action_s, kick_action, propagator_prefactor, EvolvedGaussian};
use invosc::numerics::{integrate_adaptive, schrodinger_grid_evolve, GridState};
use invosc::params::evaluate_initial;
use invosc::{ForceProfile, GaussianPacket, SystemParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Norm, mean and variance of `|ψ|²` by adaptive quadrature.
pub fn density_moments(ev: &EvolvedGaussian) -> (f64, f64, f64) {
    let (lo, hi) = ev.support();
    let q = |f: &dyn Fn(f64) -> f64| integrate_adaptive(f, lo, hi, 1e-15, 1e-13).unwrap().value;
    let norm = q(&|x| ev.density(x));
    let mean = q(&|x| x * ev.density(x)) / norm;
    let var = q(&|x| (x - mean).powi(2) * ev.density(x)) / norm;
    (norm, mean, var)
}

/// `ψ(x,t) = ∫K(x,t|x₁,0)ψ₀(x₁)dx₁` on the real line. The initial envelope
/// makes the integrand absolutely convergent.
pub fn propagate_by_quadrature(
    params: &SystemParams,
    packet: &GaussianPacket,
    force: &ForceProfile,
    t: f64,
    x: f64,
) -> Complex64 {
    let pre = propagator_prefactor(params, t);
    let integrand = |x1: f64| {
        let s = action_s(params, x, t, x1, 0.0, force).unwrap();
        pre * Complex64::new(0.0, s / params.hbar).exp() * evaluate_initial(packet, params, x1)
    };
    let w = 14.0 * packet.sigma;
    integrate_adaptive(integrand, packet.x0 - w, packet.x0 + w, 1e-14, 1e-11)
        .unwrap()
        .value
}

/// `∫K_δ(x,t|x₁,0)ψ₀(x₁)dx₁` with the kick action `S₀ + x₁p`.
pub fn kick_by_quadrature(
    params: &SystemParams,
    packet: &GaussianPacket,
    p: f64,
    t: f64,
    x: f64,
) -> Complex64 {
    let pre = propagator_prefactor(params, t);
    let integrand = |x1: f64| {
        let s = kick_action(params, x, t, x1, 0.0, p).unwrap();
        pre * Complex64::new(0.0, s / params.hbar).exp() * evaluate_initial(packet, params, x1)
    };
    let w = 14.0 * packet.sigma;
    integrate_adaptive(integrand, packet.x0 - w, packet.x0 + w, 1e-14, 1e-11)
        .unwrap()
        .value
}

/// `∫K(x,t|y,tm)K(y,tm|x₁,t₁)dy`. The total phase is quadratic in `y`;
/// its coefficients are read off at three nodes and the Fresnel integral is
/// done along the steepest-descent ray `y = y* + e^{±iπ/4}u`.
pub fn chapman_kolmogorov(
    params: &SystemParams,
    force: &ForceProfile,
    x: f64,
    t: f64,
    tm: f64,
    x1: f64,
    t1: f64,
) -> Complex64 {
    let phase = |y: f64| {
        (action_s(params, x, t, y, tm, force).unwrap() + action_s(params, y, tm, x1, t1, force).unwrap())
            / params.hbar
    };
    let (m, z, p) = (phase(-1.0), phase(0.0), phase(1.0));
    let a = 0.5 * (p + m) - z;
    let b = 0.5 * (p - m);
    let fit = |y: f64| a * y * y + b * y + z;
    assert!((fit(2.5) - phase(2.5)).abs() < 1e-9 * phase(2.5).abs().max(1.0));
    let vertex = z - b * b / (4.0 * a);
    let gaussian = integrate_adaptive(|u: f64| (-a.abs() * u * u).exp(), -40.0, 40.0, 1e-15, 1e-13)
        .unwrap()
        .value;
    let ray = Complex64::from_polar(1.0, a.signum() * std::f64::consts::FRAC_PI_4);
    let prefactors = propagator_prefactor(params, t - tm) * propagator_prefactor(params, tm - t1);
    prefactors * ray * gaussian * Complex64::new(0.0, vertex).exp()
}

/// Grid oracle: evolves `initial` on `[x_min, x_max]` and returns the
/// relative L2 deviation from `reference` at each requested time.
#[allow(clippy::too_many_arguments)]
pub fn grid_deviations(
    params: &SystemParams,
    force: &ForceProfile,
    initial: impl Fn(f64) -> Complex64,
    reference: impl Fn(f64, f64) -> Complex64,
    times: &[f64],
    (x_min, x_max, n): (f64, f64, usize),
    dt: f64,
) -> Vec<f64> {
    let mut grid = GridState::from_fn(x_min, x_max, n, 0.0, initial).unwrap();
    times
        .iter()
        .map(|&t| {
            grid = schrodinger_grid_evolve(params, &grid, force, t, dt, None).unwrap();
            grid.relative_l2_deviation(|x| reference(x, t))
        })
        .collect()
}

/// Reproducible random packets and parameters.
pub struct Cases(ChaCha8Rng);

impl Cases {
    pub fn new(seed: u64) -> Self {
        Cases(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.gen_range(lo..hi)
    }

    pub fn params(&mut self) -> SystemParams {
        SystemParams::new(self.uniform(0.5, 1.5), self.uniform(0.5, 1.5)).unwrap()
    }

    pub fn packet(&mut self) -> GaussianPacket {
        GaussianPacket::new(
            self.uniform(-2.0, 2.0),
            self.uniform(-1.5, 1.5),
            self.uniform(0.5, 1.5),
        )
        .unwrap()
    }

    pub fn force(&mut self) -> ForceProfile {
        match self.0.gen_range(0..4) {
            0 => ForceProfile::Zero,
            1 => ForceProfile::Constant {
                amplitude: self.uniform(-1.0, 1.0),
            },
            2 => ForceProfile::Harmonic {
                amplitude: self.uniform(-1.0, 1.0),
                omega0: self.uniform(0.2, 3.0),
            },
            _ => {
                let times: Vec<f64> = (0..6).map(|i| 0.5 * i as f64).collect();
                let values = times.iter().map(|_| self.uniform(-1.0, 1.0)).collect();
                ForceProfile::tabulated(times, values).unwrap()
            }
        }
    }
}
