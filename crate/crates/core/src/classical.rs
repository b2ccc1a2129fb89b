//! Classical driven trajectory `ξ̈ − Ω²ξ = F(t)` and its Lagrangian action.

use crate::numerics::quadrature::integrate_pieces;
use crate::params::{force_at, ForceProfile, SystemParams};
use crate::{Error, Result};

const TRAJECTORY_REL_TOL: f64 = 1e-12;
const TRAJECTORY_ABS_TOL: f64 = 1e-14;
const ACTION_REL_TOL: f64 = 1e-10;
const ACTION_ABS_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub xi: f64,
    pub xi_dot: f64,
}

/// Position and velocity at `t` of the particle that left `x0` with momentum
/// `p0` at time 0.
pub fn trajectory(
    params: &SystemParams,
    x0: f64,
    p0: f64,
    force: &ForceProfile,
    t: f64,
) -> Result<TrajectoryPoint> {
    check_time(force, t)?;
    let omega = params.omega;
    let (s, c) = ((omega * t).sinh(), (omega * t).cosh());
    let mut xi = x0 * c + p0 / omega * s;
    let mut xi_dot = x0 * omega * s + p0 * c;
    if !force.is_zero() {
        xi += force.weighted_integral(
            0.0,
            t,
            |u| (omega * (t - u)).sinh(),
            TRAJECTORY_ABS_TOL,
            TRAJECTORY_REL_TOL,
        )? / omega;
        xi_dot += force.weighted_integral(
            0.0,
            t,
            |u| (omega * (t - u)).cosh(),
            TRAJECTORY_ABS_TOL,
            TRAJECTORY_REL_TOL,
        )?;
    }
    Ok(TrajectoryPoint { t, xi, xi_dot })
}

/// `∫_0^t [ξ̇²/2 + Ω²ξ²/2 + ξF] ds` along [`trajectory`].
pub fn lagrangian_action(
    params: &SystemParams,
    x0: f64,
    p0: f64,
    force: &ForceProfile,
    t: f64,
) -> Result<f64> {
    check_time(force, t)?;
    let omega2 = params.omega * params.omega;
    let mut points = vec![0.0];
    points.extend(force.breakpoints(0.0, t));
    points.push(t);

    // the integrand cannot return errors, so stash the first one
    let failure = std::cell::Cell::new(None);
    let lagrangian = |s: f64| match trajectory(params, x0, p0, force, s) {
        Ok(p) => {
            let f = force_at(force, s).unwrap_or(0.0);
            0.5 * p.xi_dot * p.xi_dot + 0.5 * omega2 * p.xi * p.xi + p.xi * f
        }
        Err(e) => {
            failure.set(Some(e));
            0.0
        }
    };
    let value = integrate_pieces(lagrangian, &points, ACTION_ABS_TOL, ACTION_REL_TOL)?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

fn check_time(force: &ForceProfile, t: f64) -> Result<()> {
    if force.is_kick() {
        return Err(Error::KickHasNoValue);
    }
    if !t.is_finite() {
        return Err(Error::invalid("t", "time must be finite"));
    }
    if t < 0.0 {
        return Err(Error::invalid("t", format!("time must be non-negative, got {t}")));
    }
    Ok(())
}
