//! Shared parameter records: the oscillator itself, the driving force and the
//! initial Gaussian packet. Mass is fixed to 1 everywhere.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numerics::quadrature::integrate_pieces;
use crate::{Error, Result};

/// Inverted-oscillator frequency Ω and Planck constant ħ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemParams {
    pub omega: f64,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
}

fn default_hbar() -> f64 {
    1.0
}

impl SystemParams {
    pub fn new(omega: f64, hbar: f64) -> Result<Self> {
        let params = SystemParams { omega, hbar };
        params.validate()?;
        Ok(params)
    }

    /// Ω with ħ = 1.
    pub fn with_omega(omega: f64) -> Result<Self> {
        Self::new(omega, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        positive_finite("omega", self.omega)?;
        positive_finite("hbar", self.hbar)
    }
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            omega: 1.0,
            hbar: 1.0,
        }
    }
}

/// Time dependence of the external force F(t) entering `-F(t)x`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ForceProfile {
    #[default]
    Zero,
    Constant {
        amplitude: f64,
    },
    /// F sin(ω₀t).
    Harmonic {
        amplitude: f64,
        omega0: f64,
    },
    /// p·δ(t − t1). Only the closed-form kick paths accept this variant.
    DeltaKick {
        momentum: f64,
        t1: f64,
    },
    /// Piecewise-linear table, zero outside `[times[0], times[last]]`.
    Tabulated {
        times: Vec<f64>,
        values: Vec<f64>,
    },
}

impl ForceProfile {
    pub fn tabulated(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let profile = ForceProfile::Tabulated { times, values };
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ForceProfile::Zero => Ok(()),
            ForceProfile::Constant { amplitude } => finite("amplitude", *amplitude),
            ForceProfile::Harmonic { amplitude, omega0 } => {
                finite("amplitude", *amplitude)?;
                positive_finite("omega0", *omega0)
            }
            ForceProfile::DeltaKick { momentum, t1 } => {
                finite("momentum", *momentum)?;
                finite("t1", *t1)?;
                if *t1 < 0.0 {
                    return Err(Error::invalid("t1", "kick time must be non-negative"));
                }
                Ok(())
            }
            ForceProfile::Tabulated { times, values } => {
                if times.len() != values.len() {
                    return Err(Error::invalid(
                        "values",
                        format!("{} values for {} times", values.len(), times.len()),
                    ));
                }
                if times.is_empty() {
                    return Err(Error::invalid("times", "table is empty"));
                }
                if times.iter().chain(values.iter()).any(|v| !v.is_finite()) {
                    return Err(Error::invalid("times", "table contains non-finite entries"));
                }
                if times.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::invalid("times", "must be strictly increasing"));
                }
                Ok(())
            }
        }
    }

    pub fn is_kick(&self) -> bool {
        matches!(self, ForceProfile::DeltaKick { .. })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ForceProfile::Zero => true,
            ForceProfile::Constant { amplitude } | ForceProfile::Harmonic { amplitude, .. } => {
                *amplitude == 0.0
            }
            ForceProfile::DeltaKick { momentum, .. } => *momentum == 0.0,
            ForceProfile::Tabulated { values, .. } => values.iter().all(|v| *v == 0.0),
        }
    }

    /// Points in `(lo, hi)` where the profile has a kink.
    pub fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self {
            ForceProfile::Tabulated { times, .. } => {
                times.iter().copied().filter(|&s| s > lo && s < hi).collect()
            }
            _ => Vec::new(),
        }
    }

    /// `∫_lo^hi F(s)·kernel(s) ds`, split at the profile's kinks.
    pub fn weighted_integral(
        &self,
        lo: f64,
        hi: f64,
        kernel: impl Fn(f64) -> f64,
        abs_tol: f64,
        rel_tol: f64,
    ) -> Result<f64> {
        if self.is_kick() {
            return Err(Error::KickHasNoValue);
        }
        if self.is_zero() || hi == lo {
            return Ok(0.0);
        }
        let mut points = vec![lo];
        points.extend(self.breakpoints(lo, hi));
        points.push(hi);
        integrate_pieces(
            |s| {
                // kick excluded above
                force_at_unchecked(self, s) * kernel(s)
            },
            &points,
            abs_tol,
            rel_tol,
        )
    }
}

/// F(t) for every profile except the δ-kick.
pub fn force_at(profile: &ForceProfile, t: f64) -> Result<f64> {
    if profile.is_kick() {
        return Err(Error::KickHasNoValue);
    }
    if !t.is_finite() {
        return Err(Error::invalid("t", "time must be finite"));
    }
    Ok(force_at_unchecked(profile, t))
}

fn force_at_unchecked(profile: &ForceProfile, t: f64) -> f64 {
    match profile {
        ForceProfile::Zero | ForceProfile::DeltaKick { .. } => 0.0,
        ForceProfile::Constant { amplitude } => *amplitude,
        ForceProfile::Harmonic { amplitude, omega0 } => amplitude * (omega0 * t).sin(),
        ForceProfile::Tabulated { times, values } => interpolate(times, values, t),
    }
}

fn interpolate(times: &[f64], values: &[f64], t: f64) -> f64 {
    let last = times.len() - 1;
    if t < times[0] || t > times[last] {
        return 0.0;
    }
    // first node strictly greater than t
    let hi = times.partition_point(|&s| s <= t);
    if hi == 0 {
        return values[0];
    }
    let lo = hi - 1;
    if hi > last || times[lo] == t {
        return values[lo];
    }
    let w = (t - times[lo]) / (times[hi] - times[lo]);
    values[lo] + w * (values[hi] - values[lo])
}

/// Initial packet `(2πσ²)^(-1/4) exp(-(x-x₀)²/4σ² + i p₀x/ħ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianPacket {
    pub x0: f64,
    pub p0: f64,
    pub sigma: f64,
}

impl Default for GaussianPacket {
    fn default() -> Self {
        GaussianPacket {
            x0: 0.0,
            p0: 0.0,
            sigma: 1.0,
        }
    }
}

impl GaussianPacket {
    pub fn new(x0: f64, p0: f64, sigma: f64) -> Result<Self> {
        let packet = GaussianPacket { x0, p0, sigma };
        packet.validate()?;
        Ok(packet)
    }

    pub fn validate(&self) -> Result<()> {
        finite("x0", self.x0)?;
        finite("p0", self.p0)?;
        positive_finite("sigma", self.sigma)
    }

    /// `(2πσ²)^(-1/4)`.
    pub fn normalization(&self) -> f64 {
        (2.0 * PI * self.sigma * self.sigma).powf(-0.25)
    }

    /// Same packet with its momentum shifted by `p`.
    pub fn boosted(&self, p: f64) -> Self {
        GaussianPacket {
            p0: self.p0 + p,
            ..*self
        }
    }
}

pub fn evaluate_initial(packet: &GaussianPacket, params: &SystemParams, x: f64) -> Complex64 {
    let d = x - packet.x0;
    let envelope = -d * d / (4.0 * packet.sigma * packet.sigma);
    let phase = packet.p0 * x / params.hbar;
    packet.normalization() * Complex64::new(envelope, phase).exp()
}

fn finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite, got {v}")))
    }
}

pub(crate) fn positive_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            name,
            format!("must be positive and finite, got {v}"),
        ))
    }
}
