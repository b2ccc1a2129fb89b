//! Green's function `G(t) = Σ_j R_j e^{s_j t}` and the mean motion built on
//! it.

use num_complex::Complex64;

use super::poles::{solve_poles, PoleDecomposition};
use super::BathParams;
use crate::params::{ForceProfile, SystemParams};
use crate::{Error, Result};

const CONVOLUTION_ABS_TOL: f64 = 1e-14;
const CONVOLUTION_REL_TOL: f64 = 1e-10;

/// Sum of exponentials `Σ R_j e^{s_j t}`.
///
/// Built from a [`PoleDecomposition`] when damped, or from the two poles
/// `±Ω` with residues `±1/2Ω` of the undamped oscillator.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenFunction {
    poles: Vec<Complex64>,
    residues: Vec<Complex64>,
}

impl GreenFunction {
    /// Damped or undamped Green's function, whichever `bath` describes.
    pub fn new(params: &SystemParams, bath: &BathParams) -> Result<Self> {
        if bath.gamma == 0.0 {
            params.validate()?;
            bath.validate()?;
            Ok(Self::closed_system(params))
        } else {
            Ok(Self::from_poles(&solve_poles(params, bath)?))
        }
    }

    pub fn from_poles(dec: &PoleDecomposition) -> Self {
        GreenFunction {
            poles: dec.poles.to_vec(),
            residues: dec.residues.to_vec(),
        }
    }

    /// `sinh(Ωt)/Ω`.
    pub fn closed_system(params: &SystemParams) -> Self {
        let w = params.omega;
        let r = 0.5 / w;
        GreenFunction {
            poles: vec![Complex64::new(w, 0.0), Complex64::new(-w, 0.0)],
            residues: vec![Complex64::new(r, 0.0), Complex64::new(-r, 0.0)],
        }
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn residues(&self) -> &[Complex64] {
        &self.residues
    }

    fn terms(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.poles.iter().copied().zip(self.residues.iter().copied())
    }

    /// `Σ R_j s_jⁿ e^{s_j t}` before discarding the imaginary rounding.
    pub fn complex_derivative(&self, order: u32, t: f64) -> Complex64 {
        self.terms().map(|(s, r)| r * s.powu(order) * (s * t).exp()).sum()
    }

    pub fn value(&self, t: f64) -> f64 {
        self.complex_derivative(0, t).re
    }

    pub fn derivative(&self, t: f64) -> f64 {
        self.complex_derivative(1, t).re
    }

    /// `W(ω,t) = ∫_0^t G(t₁)e^{−iωt₁}dt₁ = Σ_j R_j (e^{(s_j−iω)t} − 1)/(s_j − iω)`.
    pub fn windowed_transform(&self, omega: f64, t: f64) -> Complex64 {
        self.terms()
            .map(|(s, r)| r * exp_window(s - Complex64::new(0.0, omega), t))
            .sum()
    }

    /// `∫_0^t G(t − t₁)F(t₁)dt₁`.
    pub fn forced_response(&self, force: &ForceProfile, t: f64) -> Result<f64> {
        check_time(t)?;
        match *force {
            ForceProfile::Zero => Ok(0.0),
            ForceProfile::Harmonic { amplitude, omega0 } => self.harmonic_response(amplitude, omega0, t),
            ForceProfile::DeltaKick { .. } => Err(Error::KickHasNoValue),
            _ => force.weighted_integral(
                0.0,
                t,
                |u| self.value(t - u),
                CONVOLUTION_ABS_TOL,
                CONVOLUTION_REL_TOL,
            ),
        }
    }

    /// Response to `F sin ω₀t` from rest:
    /// `Σ_j R_j (F/ω₀)/((s_j/ω₀)² + 1)·[e^{s_j t} − cos ω₀t − (s_j/ω₀) sin ω₀t]`.
    pub fn harmonic_response(&self, amplitude: f64, omega0: f64, t: f64) -> Result<f64> {
        check_time(t)?;
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::invalid(
                "omega0",
                format!("must be positive, got {omega0}"),
            ));
        }
        let (c, s) = ((omega0 * t).cos(), (omega0 * t).sin());
        let mut total = Complex64::default();
        for (pole, r) in self.terms() {
            let ratio = pole / omega0;
            let denominator = ratio * ratio + 1.0;
            if denominator.norm() < 1e-12 {
                return Err(Error::ResonantDenominator { pole, omega0 });
            }
            total += r * (amplitude / omega0) / denominator * ((pole * t).exp() - c - ratio * s);
        }
        Ok(total.re)
    }
}

/// `(e^{zt} − 1)/z`, continuous through `z = 0`.
fn exp_window(z: Complex64, t: f64) -> Complex64 {
    let zt = z * t;
    if zt.norm() < 0.5 {
        // t·Σ (zt)ⁿ/(n+1)!
        let mut term = Complex64::new(t, 0.0);
        let mut sum = term;
        for n in 2..30 {
            term *= zt / n as f64;
            sum += term;
            if term.norm() < 1e-17 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (zt.exp() - 1.0) / z
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::invalid("t", format!("must be finite and ≥ 0, got {t}")));
    }
    Ok(())
}

pub fn green_function(g: &GreenFunction, t: f64) -> f64 {
    g.value(t)
}

pub fn green_derivative(g: &GreenFunction, t: f64) -> f64 {
    g.derivative(t)
}

pub fn windowed_transform(g: &GreenFunction, omega: f64, t: f64) -> Complex64 {
    g.windowed_transform(omega, t)
}

pub fn harmonic_response(g: &GreenFunction, amplitude: f64, omega0: f64, t: f64) -> Result<f64> {
    g.harmonic_response(amplitude, omega0, t)
}

/// `⟨x(t)⟩ = ⟨x(0)⟩Ġ(t) + ⟨p(0)⟩G(t) + ∫_0^t G(t−t₁)F(t₁)dt₁`.
pub fn mean_trajectory(
    g: &GreenFunction,
    mean_x: f64,
    mean_p: f64,
    force: &ForceProfile,
    t: f64,
) -> Result<f64> {
    let forced = g.forced_response(force, t)?;
    Ok(mean_x * g.derivative(t) + mean_p * g.value(t) + forced)
}
