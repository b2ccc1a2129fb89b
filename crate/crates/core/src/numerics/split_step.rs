//! Strang split-step Fourier solver for
//! `iħψ_t = −ħ²/2 ψ_xx − Ω²x²/2 ψ − F(t)xψ` on a periodic grid.
//!
//! Used only as a brute-force oracle for the closed-form evolution.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::params::{force_at, ForceProfile, SystemParams};
use crate::{Error, Result};

const BOUNDARY_POINTS: usize = 5;
const BOUNDARY_PROBABILITY: f64 = 1e-6;
const CHECK_EVERY: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct GridState {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub dx: f64,
    pub psi: Vec<Complex64>,
    pub t: f64,
}

impl GridState {
    /// Samples `f` on `x_min + i·dx`, `dx = (x_max − x_min)/n`, and
    /// normalizes so that `Σ|ψᵢ|²dx = 1`.
    pub fn from_fn(x_min: f64, x_max: f64, n: usize, t: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        if !n.is_power_of_two() || n < 16 {
            return Err(Error::invalid(
                "n",
                format!("must be a power of two ≥ 16, got {n}"),
            ));
        }
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::invalid("x_max", "grid bounds must satisfy x_min < x_max"));
        }
        let dx = (x_max - x_min) / n as f64;
        let psi: Vec<Complex64> = (0..n).map(|i| f(x_min + i as f64 * dx)).collect();
        let mut state = GridState {
            x_min,
            x_max,
            n,
            dx,
            psi,
            t,
        };
        let norm = state.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::invalid("psi", "initial state has zero or non-finite norm"));
        }
        let scale = norm.sqrt().recip();
        state.psi.iter_mut().for_each(|v| *v *= scale);
        Ok(state)
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.x(i))
    }

    /// `Σ|ψᵢ|²dx`.
    pub fn norm(&self) -> f64 {
        self.psi.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.dx
    }

    /// Probability within `points` grid points of either edge.
    pub fn edge_probability(&self, points: usize) -> f64 {
        let k = points.min(self.n / 2);
        let head: f64 = self.psi[..k].iter().map(|v| v.norm_sqr()).sum();
        let tail: f64 = self.psi[self.n - k..].iter().map(|v| v.norm_sqr()).sum();
        (head + tail) * self.dx
    }

    /// `‖ψ − reference‖ / ‖reference‖` over the grid points.
    pub fn relative_l2_deviation(&self, reference: impl Fn(f64) -> Complex64) -> f64 {
        let (mut diff, mut base) = (0.0, 0.0);
        for (i, v) in self.psi.iter().enumerate() {
            let r = reference(self.x(i));
            diff += (v - r).norm_sqr();
            base += r.norm_sqr();
        }
        (diff / base).sqrt()
    }
}

/// Split-step propagator. Unlike [`SystemParams`], `omega` may be zero here
/// (free particle), which the oracle's own tests use.
#[derive(Debug, Clone)]
pub struct SplitStep {
    pub omega: f64,
    pub hbar: f64,
    pub force: ForceProfile,
    pub dt: f64,
    /// Width of the cosine-ramp absorbing layer at each edge.
    pub absorber: Option<f64>,
}

impl SplitStep {
    pub fn new(params: &SystemParams, force: ForceProfile, dt: f64) -> Self {
        SplitStep {
            omega: params.omega,
            hbar: params.hbar,
            force,
            dt,
            absorber: None,
        }
    }

    pub fn with_absorber(mut self, width: f64) -> Self {
        self.absorber = Some(width);
        self
    }

    /// Advances `grid` to `t_final`; the last step is shortened to land on it.
    pub fn evolve(&self, grid: &GridState, t_final: f64) -> Result<GridState> {
        if self.force.is_kick() {
            return Err(Error::KickHasNoValue);
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::invalid("dt", "must be positive"));
        }
        if !(self.omega >= 0.0) || !(self.hbar > 0.0) {
            return Err(Error::invalid("omega", "need omega ≥ 0 and hbar > 0"));
        }
        if !(t_final > grid.t) {
            return Err(Error::invalid("t_final", "must exceed the grid time"));
        }
        let n = grid.n;
        let mut planner = FftPlanner::<f64>::new();
        let forward: Arc<dyn Fft<f64>> = planner.plan_fft_forward(n);
        let inverse: Arc<dyn Fft<f64>> = planner.plan_fft_inverse(n);
        let mut scratch = vec![Complex64::default(); forward.get_inplace_scratch_len()];

        let wavenumbers: Vec<f64> = (0..n)
            .map(|j| {
                let j = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
                2.0 * PI * j / (n as f64 * grid.dx)
            })
            .collect();
        let mask = self.absorber.map(|w| absorbing_mask(grid, w));

        let mut state = grid.clone();
        let steps = ((t_final - grid.t) / self.dt).ceil().max(1.0) as usize;
        let mut kinetic_dt = f64::NAN;
        let mut kinetic = Vec::new();
        for step in 0..steps {
            let t0 = state.t;
            let h = if step + 1 == steps { t_final - t0 } else { self.dt };
            if h != kinetic_dt {
                let inv_n = 1.0 / n as f64;
                kinetic = wavenumbers
                    .iter()
                    .map(|k| Complex64::from_polar(inv_n, -0.5 * self.hbar * k * k * h))
                    .collect();
                kinetic_dt = h;
            }
            let f_mid = force_at(&self.force, t0 + 0.5 * h)?;
            self.potential_half_step(&mut state, f_mid, h);
            forward.process_with_scratch(&mut state.psi, &mut scratch);
            state.psi.iter_mut().zip(&kinetic).for_each(|(v, k)| *v *= k);
            inverse.process_with_scratch(&mut state.psi, &mut scratch);
            self.potential_half_step(&mut state, f_mid, h);
            if let Some(mask) = &mask {
                state.psi.iter_mut().zip(mask).for_each(|(v, m)| *v *= m);
            }
            state.t = if step + 1 == steps { t_final } else { t0 + h };

            if mask.is_none() && (step % CHECK_EVERY == 0 || step + 1 == steps) {
                let p = state.edge_probability(BOUNDARY_POINTS);
                if p > BOUNDARY_PROBABILITY {
                    return Err(Error::DomainTooSmall {
                        probability: p,
                        points: BOUNDARY_POINTS,
                    });
                }
            }
        }
        Ok(state)
    }

    fn potential_half_step(&self, state: &mut GridState, force: f64, h: f64) {
        let omega2 = self.omega * self.omega;
        let scale = 0.5 * h / self.hbar;
        for i in 0..state.n {
            let x = state.x(i);
            let v = -0.5 * omega2 * x * x - force * x;
            state.psi[i] *= Complex64::from_polar(1.0, -v * scale);
        }
    }
}

/// `cos(π d / 2w)^{1/8}` inside the layer, `d` = depth into it.
fn absorbing_mask(grid: &GridState, width: f64) -> Vec<f64> {
    grid.xs()
        .map(|x| {
            let depth = (grid.x_min + width - x).max(x - (grid.x_max - width)).max(0.0);
            if depth == 0.0 {
                1.0
            } else {
                (0.5 * PI * (depth / width).min(1.0)).cos().max(0.0).powf(0.125)
            }
        })
        .collect()
}

/// Evolves `grid` to `t_final` under the forced inverted oscillator.
pub fn schrodinger_grid_evolve(
    params: &SystemParams,
    grid: &GridState,
    force: &ForceProfile,
    t_final: f64,
    dt: f64,
    absorber: Option<f64>,
) -> Result<GridState> {
    let mut stepper = SplitStep::new(params, force.clone(), dt);
    stepper.absorber = absorber;
    stepper.evolve(grid, t_final)
}
