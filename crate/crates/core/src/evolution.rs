//! Exact propagator of the forced inverted oscillator and closed-form
//! evolution of Gaussian packets, including instantaneous kicks.
//!
//! With `y = x − ξ(t)` the evolved packet factorizes as
//!
//! ```text
//! ψ(x,t) = (2πσ²)^(-1/4) Γ^(-1/2) exp( iΓ̇y²/(2ħΓ) + i[ξ̇y + S_L + p₀x₀]/ħ ),
//! Γ(t) = cosh Ωt + i(ħ/2Ωσ²) sinh Ωt,
//! ```
//!
//! where `S_L` is the Lagrangian action along the classical path. Both square
//! roots stay on the principal branch: `Re Γ ≥ 1` and `sinh Ωθ > 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::classical::{lagrangian_action, trajectory};
use crate::params::{ForceProfile, GaussianPacket, SystemParams};
use crate::{Error, Result};

const SINGLE_REL_TOL: f64 = 1e-12;
const DOUBLE_REL_TOL: f64 = 1e-10;
const ABS_TOL: f64 = 1e-14;
/// Elapsed times below `MIN_ELAPSED/Ω` are rejected.
const MIN_ELAPSED: f64 = 1e-9;

/// Closed-form Gaussian state at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedGaussian {
    pub t: f64,
    pub xi: f64,
    pub xi_dot: f64,
    /// Γ(t).
    pub gamma_factor: Complex64,
    /// dΓ/dt.
    pub gamma_rate: Complex64,
    /// `S_L + p₀x₀`: the position-independent phase, in action units.
    pub phase_action: f64,
    /// `(2πσ²)^(-1/4) Γ^(-1/2)`.
    pub norm_prefactor: Complex64,
    pub sigma: f64,
    pub hbar: f64,
}

impl EvolvedGaussian {
    pub fn evaluate(&self, x: f64) -> Complex64 {
        let y = x - self.xi;
        let quadratic = Complex64::i() * self.gamma_rate / (2.0 * self.hbar * self.gamma_factor) * y * y;
        let linear = Complex64::new(0.0, (self.xi_dot * y + self.phase_action) / self.hbar);
        self.norm_prefactor * (quadratic + linear).exp()
    }

    pub fn density(&self, x: f64) -> f64 {
        self.evaluate(x).norm_sqr()
    }

    /// Coordinate variance σ²|Γ|².
    pub fn variance(&self) -> f64 {
        self.sigma * self.sigma * self.gamma_factor.norm_sqr()
    }

    /// Interval holding all but ~e^{-200} of the probability.
    pub fn support(&self) -> (f64, f64) {
        let w = 20.0 * self.variance().sqrt();
        (self.xi - w, self.xi + w)
    }
}

/// `Γ(t)` and `Γ̇(t)` for a packet of width `sigma`.
pub fn spreading_factor(params: &SystemParams, sigma: f64, t: f64) -> (Complex64, Complex64) {
    let omega = params.omega;
    let kappa = params.hbar / (2.0 * omega * sigma * sigma);
    let (s, c) = ((omega * t).sinh(), (omega * t).cosh());
    (
        Complex64::new(c, kappa * s),
        Complex64::new(omega * s, omega * kappa * c),
    )
}

fn assemble(
    params: &SystemParams,
    packet: &GaussianPacket,
    t: f64,
    xi: f64,
    xi_dot: f64,
    phase_action: f64,
) -> EvolvedGaussian {
    let (gamma_factor, gamma_rate) = spreading_factor(params, packet.sigma, t);
    EvolvedGaussian {
        t,
        xi,
        xi_dot,
        gamma_factor,
        gamma_rate,
        phase_action,
        norm_prefactor: packet.normalization() / gamma_factor.sqrt(),
        sigma: packet.sigma,
        hbar: params.hbar,
    }
}

/// Free inverted-oscillator motion from `(x, p)` over `tau`: end point and
/// the action `∫L = (ξ_end ξ̇_end − x p)/2`.
fn free_segment(params: &SystemParams, x: f64, p: f64, tau: f64) -> (f64, f64, f64) {
    let omega = params.omega;
    let (s, c) = ((omega * tau).sinh(), (omega * tau).cosh());
    let xi = x * c + p / omega * s;
    let xi_dot = x * omega * s + p * c;
    (xi, xi_dot, 0.5 * (xi * xi_dot - x * p))
}

/// Evolves `packet` from time 0 to `t` under `force`.
pub fn evolve_gaussian(
    params: &SystemParams,
    packet: &GaussianPacket,
    force: &ForceProfile,
    t: f64,
) -> Result<EvolvedGaussian> {
    if force.is_kick() {
        return Err(Error::KickHasNoValue);
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::invalid(
            "t",
            format!("time must be finite and ≥ 0, got {t}"),
        ));
    }
    let (xi, xi_dot, action) = if force.is_zero() {
        free_segment(params, packet.x0, packet.p0, t)
    } else {
        let end = trajectory(params, packet.x0, packet.p0, force, t)?;
        let action = lagrangian_action(params, packet.x0, packet.p0, force, t)?;
        (end.xi, end.xi_dot, action)
    };
    Ok(assemble(
        params,
        packet,
        t,
        xi,
        xi_dot,
        action + packet.p0 * packet.x0,
    ))
}

/// Kick `p·δ(t)` applied to the freshly prepared packet: the packet carries
/// momentum `P = p₀ + p` and then moves freely.
pub fn evolve_delta_kick(
    params: &SystemParams,
    packet: &GaussianPacket,
    p: f64,
    t: f64,
) -> Result<EvolvedGaussian> {
    evolve_gaussian(params, &packet.boosted(p), &ForceProfile::Zero, t)
}

/// Free evolution to `t1`, momentum boost `e^{ipx/ħ}`, free evolution to `t`.
pub fn delta_kick_at(
    params: &SystemParams,
    packet: &GaussianPacket,
    p: f64,
    t1: f64,
    t: f64,
) -> Result<EvolvedGaussian> {
    if !(t1 >= 0.0) || !t1.is_finite() {
        return Err(Error::invalid(
            "t1",
            format!("kick time must be finite and ≥ 0, got {t1}"),
        ));
    }
    if t1 > t {
        return Err(Error::KickAfterEvaluation { t1, t });
    }
    if p == 0.0 {
        return evolve_gaussian(params, packet, &ForceProfile::Zero, t);
    }
    let (xi1, v1, action1) = free_segment(params, packet.x0, packet.p0, t1);
    let (xi, xi_dot, action2) = free_segment(params, xi1, v1 + p, t - t1);
    // the kick contributes ∫ξ·pδ(s − t1) = p·ξ(t1) to the action
    let action = action1 + p * xi1 + action2;
    Ok(assemble(
        params,
        packet,
        t,
        xi,
        xi_dot,
        action + packet.p0 * packet.x0,
    ))
}

/// Classical action `S(x,t|x1,t1)` of the forced inverted oscillator.
///
/// The force integrals are `∫F(s) sinh Ω(s−t1) ds`, `∫F(s) sinh Ω(t−s) ds`
/// and the ordered double integral over `t1 ≤ s1 ≤ s ≤ t`.
pub fn action_s(
    params: &SystemParams,
    x: f64,
    t: f64,
    x1: f64,
    t1: f64,
    force: &ForceProfile,
) -> Result<f64> {
    let theta = check_elapsed(params, t, t1)?;
    if force.is_kick() {
        return Err(Error::KickHasNoValue);
    }
    let omega = params.omega;
    let (s, c) = ((omega * theta).sinh(), (omega * theta).cosh());
    let mut bracket = c * (x * x + x1 * x1) - 2.0 * x * x1;
    if !force.is_zero() {
        let towards_end =
            force.weighted_integral(t1, t, |u| (omega * (u - t1)).sinh(), ABS_TOL, SINGLE_REL_TOL)?;
        let from_start =
            force.weighted_integral(t1, t, |u| (omega * (t - u)).sinh(), ABS_TOL, SINGLE_REL_TOL)?;
        let failure = std::cell::Cell::new(None);
        let double = force.weighted_integral(
            t1,
            t,
            |u| {
                let inner =
                    force.weighted_integral(t1, u, |v| (omega * (v - t1)).sinh(), ABS_TOL, SINGLE_REL_TOL);
                match inner {
                    Ok(inner) => (omega * (t - u)).sinh() * inner,
                    Err(e) => {
                        failure.set(Some(e));
                        0.0
                    }
                }
            },
            ABS_TOL,
            DOUBLE_REL_TOL,
        )?;
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        bracket +=
            2.0 * x / omega * towards_end + 2.0 * x1 / omega * from_start - 2.0 / (omega * omega) * double;
    }
    Ok(omega / (2.0 * s) * bracket)
}

/// Kernel value and the action it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorValue {
    pub value: Complex64,
    pub action: f64,
}

/// `K = sqrt(Ω/(2πiħ sinh Ωθ))·exp(iS/ħ)`, principal branch.
pub fn propagator(
    params: &SystemParams,
    x: f64,
    t: f64,
    x1: f64,
    t1: f64,
    force: &ForceProfile,
) -> Result<PropagatorValue> {
    let action = action_s(params, x, t, x1, t1, force)?;
    Ok(PropagatorValue {
        value: propagator_prefactor(params, t - t1) * Complex64::new(0.0, action / params.hbar).exp(),
        action,
    })
}

/// `S_δ(x,t|x1,t1)`: free action plus `x1·p` for a kick at the start time.
pub fn kick_action(params: &SystemParams, x: f64, t: f64, x1: f64, t1: f64, p: f64) -> Result<f64> {
    Ok(action_s(params, x, t, x1, t1, &ForceProfile::Zero)? + x1 * p)
}

/// `sqrt(Ω/(2πiħ sinh Ωθ))`.
pub fn propagator_prefactor(params: &SystemParams, theta: f64) -> Complex64 {
    let modulus = (params.omega / (2.0 * PI * params.hbar * (params.omega * theta).sinh())).sqrt();
    Complex64::from_polar(modulus, -0.25 * PI)
}

fn check_elapsed(params: &SystemParams, t: f64, t1: f64) -> Result<f64> {
    let theta = t - t1;
    if !theta.is_finite() || theta <= 0.0 {
        return Err(Error::NonPositiveElapsedTime(theta));
    }
    if theta < MIN_ELAPSED / params.omega {
        return Err(Error::invalid(
            "t",
            format!(
                "elapsed time {theta:e} is below the minimum {:e}",
                MIN_ELAPSED / params.omega
            ),
        ));
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::evaluate_initial;

    fn unit() -> SystemParams {
        SystemParams::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn identity_at_time_zero() {
        let params = SystemParams::new(1.3, 0.8).unwrap();
        let packet = GaussianPacket::new(-0.4, 1.2, 0.7).unwrap();
        let force = ForceProfile::Constant { amplitude: 0.3 };
        let ev = evolve_gaussian(&params, &packet, &force, 0.0).unwrap();
        assert_eq!(ev.gamma_factor, Complex64::new(1.0, 0.0));
        assert_eq!(ev.xi, packet.x0);
        for x in [-3.0, -0.4, 0.0, 1.7] {
            let a = ev.evaluate(x);
            let b = evaluate_initial(&packet, &params, x);
            assert!((a - b).norm() < 1e-12, "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn spreading_at_unit_time() {
        let ev = evolve_gaussian(
            &unit(),
            &GaussianPacket::new(0.0, 0.0, 1.0).unwrap(),
            &ForceProfile::Zero,
            1.0,
        )
        .unwrap();
        let expected = 1f64.cosh().powi(2) + 1f64.sinh().powi(2) / 4.0;
        assert!((ev.gamma_factor.norm_sqr() - expected).abs() < 1e-14);
        assert!((expected - 2.726_372_3).abs() < 1e-7);
        assert!((ev.variance() - expected).abs() < 1e-14);
    }

    #[test]
    fn free_action_values() {
        assert_eq!(
            action_s(&unit(), 0.0, 1.0, 0.0, 0.0, &ForceProfile::Zero).unwrap(),
            0.0
        );
        let s = action_s(&unit(), 1.0, 1.0, 0.0, 0.0, &ForceProfile::Zero).unwrap();
        assert!((s - 1f64.cosh() / (2.0 * 1f64.sinh())).abs() < 1e-15);
        assert!((s - 0.656_517_642_749_665_6).abs() < 1e-12);
    }

    #[test]
    fn short_time_action_is_free_particle() {
        let theta = 1e-3;
        let (x, x1) = (0.7, 0.2);
        let s = action_s(
            &unit(),
            x,
            theta,
            x1,
            0.0,
            &ForceProfile::Constant { amplitude: 0.5 },
        )
        .unwrap();
        let free = (x - x1).powi(2) / (2.0 * theta);
        assert!(((s - free) / free).abs() < 1e-4);
    }

    #[test]
    fn elapsed_time_errors() {
        assert_eq!(
            action_s(&unit(), 0.0, 1.0, 0.0, 1.0, &ForceProfile::Zero),
            Err(Error::NonPositiveElapsedTime(0.0))
        );
        assert!(action_s(&unit(), 0.0, 1.0, 0.0, 2.0, &ForceProfile::Zero).is_err());
        assert!(action_s(&unit(), 0.0, 1e-12, 0.0, 0.0, &ForceProfile::Zero).is_err());
    }

    #[test]
    fn propagator_prefactor_modulus_and_phase() {
        for (x, x1) in [(0.0, 0.0), (1.0, -2.0), (3.0, 0.5)] {
            let k = propagator(&unit(), x, 1.0, x1, 0.0, &ForceProfile::Zero).unwrap();
            assert!((k.value.norm() - (1.0 / (2.0 * PI * 1f64.sinh())).sqrt()).abs() < 1e-15);
            assert!((k.value.norm() - 0.368_005_2).abs() < 1e-7);
        }
        let pre = propagator_prefactor(&unit(), 0.5);
        assert!((pre.arg() + 0.25 * PI).abs() < 1e-15);
    }

    #[test]
    fn kick_centres() {
        let packet = GaussianPacket::new(0.0, 0.0, 1.0).unwrap();
        let ev = evolve_delta_kick(&unit(), &packet, 1.0, 1.0).unwrap();
        assert!((ev.xi - 1f64.sinh()).abs() < 1e-15);
        let late = delta_kick_at(&unit(), &packet, 1.0, 0.5, 1.0).unwrap();
        assert!((late.xi - 0.5f64.sinh()).abs() < 1e-15);
        assert!((late.xi - 0.521_095_305_493_747_4).abs() < 1e-15);
    }

    #[test]
    fn kick_reductions() {
        let params = SystemParams::new(0.9, 1.1).unwrap();
        let packet = GaussianPacket::new(-1.0, 0.3, 0.8).unwrap();
        let free = evolve_gaussian(&params, &packet, &ForceProfile::Zero, 1.4).unwrap();
        assert_eq!(delta_kick_at(&params, &packet, 0.0, 0.6, 1.4).unwrap(), free);
        assert_eq!(evolve_delta_kick(&params, &packet, 0.0, 1.4).unwrap(), free);

        let at_zero = delta_kick_at(&params, &packet, 0.7, 0.0, 1.4).unwrap();
        let direct = evolve_delta_kick(&params, &packet, 0.7, 1.4).unwrap();
        for x in [-4.0, -1.0, 0.0, 2.0] {
            assert!((at_zero.evaluate(x) - direct.evaluate(x)).norm() < 1e-12);
        }
        assert!(matches!(
            delta_kick_at(&params, &packet, 0.7, 2.0, 1.4),
            Err(Error::KickAfterEvaluation { .. })
        ));
    }

    #[test]
    fn kick_profile_is_rejected_by_quadrature_paths() {
        let kick = ForceProfile::DeltaKick {
            momentum: 1.0,
            t1: 0.0,
        };
        let packet = GaussianPacket::default();
        assert!(evolve_gaussian(&unit(), &packet, &kick, 1.0).is_err());
        assert!(action_s(&unit(), 0.0, 1.0, 0.0, 0.0, &kick).is_err());
    }
}
