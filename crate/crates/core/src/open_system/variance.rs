//! Second moments: displacement variance and the symmetrized two-time
//! correlation, including the bath noise term
//! `∫ S_R(ω) e^{iω(t−t′)} W(ω,t) W*(ω,t′) dω`.

use std::f64::consts::PI;

use super::green::GreenFunction;
use super::{noise_spectrum, BathParams, InitialMoments, SpectrumMode};
use crate::numerics::quadrature::integrate_halfline_from;
use crate::params::{ForceProfile, GaussianPacket, SystemParams};
use crate::{Error, Result};

const NOISE_REL_TOL: f64 = 1e-10;
const NOISE_TAIL_FRACTION: f64 = 1e-12;

/// Variance of a Gaussian packet: `σ²Ġ² + (ħ²/4σ²)G² + ∫S_R|W|²dω`.
pub fn displacement_variance(
    g: &GreenFunction,
    bath: &BathParams,
    params: &SystemParams,
    packet: &GaussianPacket,
    t: f64,
) -> Result<f64> {
    general_variance(g, bath, params, &InitialMoments::from_packet(params, packet), t)
}

/// `var_x Ġ² + var_p G² + 2 sym_xp ĠG + ∫S_R|W|²dω`.
pub fn general_variance(
    g: &GreenFunction,
    bath: &BathParams,
    params: &SystemParams,
    moments: &InitialMoments,
    t: f64,
) -> Result<f64> {
    let (dynamic, noise) = variance_terms(g, bath, params, moments, t)?;
    Ok(dynamic + noise)
}

/// The initial-state part `var_x Ġ² + var_p G² + 2 sym_xp ĠG` and the bath
/// part `∫S_R|W|²dω` of [`general_variance`], separately.
pub fn variance_terms(
    g: &GreenFunction,
    bath: &BathParams,
    params: &SystemParams,
    moments: &InitialMoments,
    t: f64,
) -> Result<(f64, f64)> {
    check_time(t)?;
    let (gv, gd) = (g.value(t), g.derivative(t));
    let dynamic = moments.var_x * gd * gd + moments.var_p * gv * gv + 2.0 * moments.sym_xp * gd * gv;
    Ok((dynamic, noise_term(g, bath, params, t, t, dynamic.abs())?))
}

/// `φ(t,t′) = ½⟨x(t)x(t′) + x(t′)x(t)⟩` for the forced, damped oscillator.
pub fn symmetrized_correlation(
    g: &GreenFunction,
    bath: &BathParams,
    params: &SystemParams,
    moments: &InitialMoments,
    force: &ForceProfile,
    t: f64,
    tprime: f64,
) -> Result<f64> {
    check_time(t)?;
    check_time(tprime)?;
    let (g1, d1) = (g.value(t), g.derivative(t));
    let (g2, d2) = (g.value(tprime), g.derivative(tprime));
    let (c1, c2) = (g.forced_response(force, t)?, g.forced_response(force, tprime)?);
    let m = moments;
    let x2 = m.var_x + m.mean_x * m.mean_x;
    let p2 = m.var_p + m.mean_p * m.mean_p;
    let xp = m.sym_xp + m.mean_x * m.mean_p;
    let dynamic = x2 * d1 * d2
        + p2 * g1 * g2
        + xp * (d1 * g2 + d2 * g1)
        + c1 * c2
        + (m.mean_x * d1 + m.mean_p * g1) * c2
        + (m.mean_x * d2 + m.mean_p * g2) * c1;
    Ok(dynamic + noise_term(g, bath, params, t, tprime, dynamic.abs())?)
}

/// `2 Re ∫_0^∞ S_R(ω) e^{iω(t−t′)} W(ω,t) W*(ω,t′) dω`; the integrand at
/// `−ω` is the conjugate of that at `ω`.
fn noise_term(
    g: &GreenFunction,
    bath: &BathParams,
    params: &SystemParams,
    t: f64,
    tprime: f64,
    scale: f64,
) -> Result<f64> {
    let silent = bath.gamma == 0.0
        || t == 0.0
        || tprime == 0.0
        || (bath.kt == 0.0 && bath.mode != SpectrumMode::Symmetrized);
    if silent {
        return Ok(0.0);
    }
    let mut width = bath.omega_d;
    if bath.kt > 0.0 && bath.mode != SpectrumMode::Classical {
        width = width.min(bath.kt / params.hbar);
    }
    width = width.min(PI / t.max(tprime)).min(params.omega);
    let delta = t - tprime;
    let integrand = |w: f64| {
        let phase = num_complex::Complex64::from_polar(1.0, w * delta);
        let product = phase * g.windowed_transform(w, t) * g.windowed_transform(w, tprime).conj();
        noise_spectrum(bath, params, w) * product.re
    };
    let abs_tol = NOISE_TAIL_FRACTION * scale.max(f64::MIN_POSITIVE);
    let r = integrate_halfline_from(integrand, 0.0, 0.25 * width, abs_tol, NOISE_REL_TOL)?;
    Ok(2.0 * r.value)
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::invalid("t", format!("must be finite and ≥ 0, got {t}")));
    }
    Ok(())
}
