//! The inverted oscillator coupled to an Ohmic bath with Drude cutoff.
//!
//! The Heisenberg–Langevin equation
//! `ẍ − Ω²x + ∫_0^t γω_D e^{−ω_D(t−t₁)} ẋ(t₁) dt₁ = F(t) + η(t)`
//! is solved through its Laplace-domain Green's function
//! `G̃(s) = (s + ω_D)/(s³ + ω_D s² + (γω_D − Ω²)s − Ω²ω_D)`.

mod green;
mod poles;
mod variance;

use serde::{Deserialize, Serialize};

pub use green::{
    green_derivative, green_function, harmonic_response, mean_trajectory, windowed_transform, GreenFunction,
};
pub use poles::{
    characteristic_coefficients, discriminant_boundary, solve_poles, CubicCoefficients, PoleDecomposition,
    RootClass,
};
pub use variance::{displacement_variance, general_variance, symmetrized_correlation, variance_terms};

use std::f64::consts::PI;

use crate::params::{positive_finite, GaussianPacket, SystemParams};
use crate::{Error, Result};

/// How the thermal occupation enters the force-noise spectrum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumMode {
    /// `ħJ(ω)n(ω)/π` with the Bose occupation `n`.
    #[default]
    Occupation,
    /// `ħJ(ω)(n(ω) + ½)/π`.
    Symmetrized,
    /// `kT·J(ω)/(πω)`.
    Classical,
}

/// Drude bath: damping `gamma`, cutoff `omega_d`, temperature `kt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathParams {
    pub gamma: f64,
    pub omega_d: f64,
    #[serde(default)]
    pub kt: f64,
    #[serde(default)]
    pub mode: SpectrumMode,
}

impl BathParams {
    pub fn new(gamma: f64, omega_d: f64, kt: f64) -> Result<Self> {
        let bath = BathParams {
            gamma,
            omega_d,
            kt,
            mode: SpectrumMode::default(),
        };
        bath.validate()?;
        Ok(bath)
    }

    pub fn with_mode(mut self, mode: SpectrumMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0) || !self.gamma.is_finite() {
            return Err(Error::invalid(
                "gamma",
                format!("must be ≥ 0 and finite, got {}", self.gamma),
            ));
        }
        positive_finite("omega_d", self.omega_d)?;
        if !(self.kt >= 0.0) || !self.kt.is_finite() {
            return Err(Error::invalid(
                "kt",
                format!("must be ≥ 0 and finite, got {}", self.kt),
            ));
        }
        Ok(())
    }
}

impl Default for BathParams {
    fn default() -> Self {
        BathParams {
            gamma: 0.5,
            omega_d: 10.0,
            kt: 0.0,
            mode: SpectrumMode::default(),
        }
    }
}

/// First and second moments of the initial state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialMoments {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    /// `⟨px + xp⟩/2 − ⟨p⟩⟨x⟩`.
    pub sym_xp: f64,
}

impl InitialMoments {
    pub fn new(
        params: &SystemParams,
        mean_x: f64,
        mean_p: f64,
        var_x: f64,
        var_p: f64,
        sym_xp: f64,
    ) -> Result<Self> {
        let m = InitialMoments {
            mean_x,
            mean_p,
            var_x,
            var_p,
            sym_xp,
        };
        m.validate(params)?;
        Ok(m)
    }

    /// Moments of a minimum-uncertainty Gaussian packet.
    pub fn from_packet(params: &SystemParams, packet: &GaussianPacket) -> Self {
        let s2 = packet.sigma * packet.sigma;
        InitialMoments {
            mean_x: packet.x0,
            mean_p: packet.p0,
            var_x: s2,
            var_p: params.hbar * params.hbar / (4.0 * s2),
            sym_xp: 0.0,
        }
    }

    pub fn validate(&self, params: &SystemParams) -> Result<()> {
        if ![self.mean_x, self.mean_p, self.sym_xp]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::invalid("moments", "must be finite"));
        }
        positive_finite("var_x", self.var_x)?;
        positive_finite("var_p", self.var_p)?;
        let bound = 0.25 * params.hbar * params.hbar;
        if self.var_x * self.var_p - self.sym_xp * self.sym_xp < bound * (1.0 - 1e-12) {
            return Err(Error::invalid(
                "moments",
                "violate the uncertainty relation var_x·var_p − sym_xp² ≥ ħ²/4",
            ));
        }
        Ok(())
    }
}

/// Memory kernel `γω_D e^{−ω_D t}`.
pub fn drude_kernel(bath: &BathParams, t: f64) -> f64 {
    bath.gamma * bath.omega_d * (-bath.omega_d * t).exp()
}

/// `J(ω) = γω/(1 + (ω/ω_D)²)`.
pub fn bath_spectral_density(bath: &BathParams, omega: f64) -> f64 {
    let r = omega / bath.omega_d;
    bath.gamma * omega / (1.0 + r * r)
}

/// Force-noise spectrum `S_R(ω)`, even in ω.
pub fn noise_spectrum(bath: &BathParams, params: &SystemParams, omega: f64) -> f64 {
    let w = omega.abs();
    let hbar = params.hbar;
    // J(ω)/ω, finite at ω = 0
    let r = w / bath.omega_d;
    let j_over_w = bath.gamma / (1.0 + r * r);
    match bath.mode {
        SpectrumMode::Classical => bath.kt * j_over_w / PI,
        SpectrumMode::Occupation | SpectrumMode::Symmetrized => {
            let half = if bath.mode == SpectrumMode::Symmetrized {
                0.5 * hbar * w * j_over_w
            } else {
                0.0
            };
            if bath.kt == 0.0 {
                return half / PI;
            }
            let x = hbar * w / bath.kt;
            // ħω·n(ω) → kT as ω → 0
            let hw_n = if x == 0.0 { bath.kt } else { hbar * w / x.exp_m1() };
            (hw_n * j_over_w + half) / PI
        }
    }
}
