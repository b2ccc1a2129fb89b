//! Macdonald function of order 1/4 from its cosh integral representation
//! `K_ν(z) = ∫_0^∞ exp(−z cosh u) cosh(νu) du`.

use super::quadrature::integrate_adaptive;
use crate::{Error, Result};

const ORDER: f64 = 0.25;
const EXPONENT_CUTOFF: f64 = 750.0;
const REL_TOL: f64 = 1e-10;

/// `K_{1/4}(z)` for `z > 0`. Underflows to 0 beyond `z ≈ 745`.
pub fn bessel_k_quarter(z: f64) -> Result<f64> {
    Ok((-z).exp() * bessel_k_quarter_scaled(z)?)
}

/// `e^z·K_{1/4}(z)`, finite for all `z > 0`.
pub fn bessel_k_quarter_scaled(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::invalid(
            "z",
            format!("must be positive and finite, got {z}"),
        ));
    }
    // exponent of the scaled integrand: −z(cosh u − 1) + u/4
    let decay = |u: f64| z * cosh_minus_one(u) - ORDER * u;
    let u_max = truncation_point(&decay);
    let integrand = |u: f64| (-z * cosh_minus_one(u)).exp() * (ORDER * u).cosh();
    // split where the integrand turns over so the peak sits on a node
    let knee = (2.0 / z).ln().max(0.0).min(u_max);
    let mut value = 0.0;
    for (lo, hi) in [(0.0, knee), (knee, u_max)] {
        value += integrate_adaptive(integrand, lo, hi, 0.0, REL_TOL)?.value;
    }
    Ok(value)
}

fn cosh_minus_one(u: f64) -> f64 {
    let s = (0.5 * u).sinh();
    2.0 * s * s
}

/// Smallest `u` (to bisection precision) with `decay(u) > 750`.
fn truncation_point(decay: &impl Fn(f64) -> f64) -> f64 {
    let mut hi = 1.0;
    while decay(hi) <= EXPONENT_CUTOFF && hi < 700.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if decay(mid) > EXPONENT_CUTOFF {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-12 * hi {
            break;
        }
    }
    hi
}
