//! RK4 oracle for the homogeneous Drude-damped Langevin equation.
//!
//! The memory integral `w(t) = ∫_0^t γω_D e^{−ω_D(t−t₁)} ẋ(t₁) dt₁` obeys
//! `ẇ = −ω_D w + γω_D ẋ` with `w(0) = 0`, so the integro-differential
//! equation becomes the first-order system
//!
//! ```text
//! ẋ = v,   v̇ = Ω²x − w,   ẇ = −ω_D w + γω_D v.
//! ```

use crate::open_system::BathParams;
use crate::params::SystemParams;
use crate::{Error, Result};

/// `G(t)` sampled at `t = k·dt`, `k = 0..=steps`.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenSamples {
    pub dt: f64,
    pub values: Vec<f64>,
    /// `Ġ(t)` at the same instants.
    pub derivatives: Vec<f64>,
}

impl GreenSamples {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|k| k as f64 * self.dt)
    }
}

/// Integrates from `x(0) = 0, v(0) = 1` to `t_final` with step `dt`, giving
/// the Green's function of the memory-kernel equation.
pub fn langevin_ode_oracle(
    params: &SystemParams,
    bath: &BathParams,
    t_final: f64,
    dt: f64,
) -> Result<GreenSamples> {
    if !(dt > 0.0) || !(t_final >= 0.0) {
        return Err(Error::invalid("dt", "need dt > 0 and t_final ≥ 0"));
    }
    let omega2 = params.omega * params.omega;
    let (wd, coupling) = (bath.omega_d, bath.gamma * bath.omega_d);
    let rhs = |s: [f64; 3]| [s[1], omega2 * s[0] - s[2], -wd * s[2] + coupling * s[1]];

    let steps = (t_final / dt).round() as usize;
    let mut state = [0.0, 1.0, 0.0];
    let mut values = Vec::with_capacity(steps + 1);
    let mut derivatives = Vec::with_capacity(steps + 1);
    values.push(state[0]);
    derivatives.push(state[1]);
    for k in 0..steps {
        state = rk4_step(&rhs, state, dt);
        if state.iter().any(|v| !v.is_finite() || v.abs() > 1e300) {
            return Err(Error::OdeUnstable {
                t: (k + 1) as f64 * dt,
            });
        }
        values.push(state[0]);
        derivatives.push(state[1]);
    }
    Ok(GreenSamples {
        dt,
        values,
        derivatives,
    })
}

/// Integrates only the auxiliary memory variable for a prescribed velocity
/// `ẋ(t)`, returning `w(t_final)`.
pub fn drude_memory(bath: &BathParams, velocity: impl Fn(f64) -> f64, t_final: f64, dt: f64) -> Result<f64> {
    if !(dt > 0.0) || !(t_final >= 0.0) {
        return Err(Error::invalid("dt", "need dt > 0 and t_final ≥ 0"));
    }
    let (wd, coupling) = (bath.omega_d, bath.gamma * bath.omega_d);
    let f = |t: f64, w: f64| -wd * w + coupling * velocity(t);
    let steps = (t_final / dt).round() as usize;
    let mut w = 0.0;
    for k in 0..steps {
        let t = k as f64 * dt;
        let k1 = f(t, w);
        let k2 = f(t + 0.5 * dt, w + 0.5 * dt * k1);
        let k3 = f(t + 0.5 * dt, w + 0.5 * dt * k2);
        let k4 = f(t + dt, w + dt * k3);
        w += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    Ok(w)
}

fn rk4_step(rhs: &impl Fn([f64; 3]) -> [f64; 3], s: [f64; 3], h: f64) -> [f64; 3] {
    let add = |a: [f64; 3], b: [f64; 3], c: f64| [a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2]];
    let k1 = rhs(s);
    let k2 = rhs(add(s, k1, 0.5 * h));
    let k3 = rhs(add(s, k2, 0.5 * h));
    let k4 = rhs(add(s, k3, h));
    [
        s[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        s[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        s[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
    ]
}
