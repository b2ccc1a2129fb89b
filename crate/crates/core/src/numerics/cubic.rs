//! Cardano's method for real monic cubics with Newton polishing.
//!
//! The cubic `r³ + a₂r² + a₁r + a₀` is shifted by `r = y − a₂/3` to the
//! depressed form `y³ + 3p·y + 2q = 0`, with
//!
//! ```text
//! q = a₂³/27 − a₂a₁/6 + a₀/2,   p = (3a₁ − a₂²)/9,   D = q² + p³.
//! ```
//!
//! `D > 0` gives one real root and a conjugate pair, `D < 0` three distinct
//! real roots, `D = 0` a repeated root.

use std::f64::consts::PI;

use num_complex::Complex64;

const NEWTON_MAX_ITER: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CardanoInvariants {
    pub q: f64,
    pub p: f64,
    pub discriminant: f64,
}

pub fn cardano_invariants(a2: f64, a1: f64, a0: f64) -> CardanoInvariants {
    let q = a2 * a2 * a2 / 27.0 - a2 * a1 / 6.0 + a0 / 2.0;
    let p = (3.0 * a1 - a2 * a2) / 9.0;
    CardanoInvariants {
        q,
        p,
        discriminant: q * q + p * p * p,
    }
}

/// The three roots of `r³ + a2·r² + a1·r + a0`.
///
/// Real roots come first in descending order; a complex pair is returned as
/// `(z, z̄)` with `Im z > 0`.
pub fn solve_cubic(a2: f64, a1: f64, a0: f64) -> [Complex64; 3] {
    let CardanoInvariants { q, p, discriminant } = cardano_invariants(a2, a1, a0);
    let shift = -a2 / 3.0;
    let poly = |r: Complex64| ((r + a2) * r + a1) * r + a0;
    let slope = |r: Complex64| (3.0 * r + 2.0 * a2) * r + a1;

    if discriminant < 0.0 {
        // three real roots, trigonometric form (p < 0 here)
        let m = 2.0 * (-p).sqrt();
        let cos_phi = (-q / (-p * p * p).sqrt()).clamp(-1.0, 1.0);
        let phi = cos_phi.acos();
        let mut roots = [0.0f64; 3];
        for (k, r) in roots.iter_mut().enumerate() {
            let y = m * (phi / 3.0 - 2.0 * PI * k as f64 / 3.0).cos();
            *r = polish(Complex64::new(y + shift, 0.0), &poly, &slope).re;
        }
        roots.sort_by(|a, b| b.total_cmp(a));
        return roots.map(|r| Complex64::new(r, 0.0));
    }

    // one real root (u + v) and −(u+v)/2 ± i·√3/2·(u − v)
    let sqrt_d = discriminant.sqrt();
    let u = (-q - q.signum() * sqrt_d).cbrt();
    let v = if u == 0.0 { 0.0 } else { -p / u };
    let real = polish(Complex64::new(u + v + shift, 0.0), &poly, &slope).re;
    let im = 0.5 * 3f64.sqrt() * (u - v).abs();
    if im == 0.0 {
        // repeated root: deflate the polished real root
        let other = (-(u + v) / 2.0 + shift, 0.0);
        let o = polish(Complex64::new(other.0, other.1), &poly, &slope).re;
        let mut roots = [real, o, o];
        roots.sort_by(|a, b| b.total_cmp(a));
        return roots.map(|r| Complex64::new(r, 0.0));
    }
    let pair = polish(Complex64::new(-(u + v) / 2.0 + shift, im), &poly, &slope);
    let pair = Complex64::new(pair.re, pair.im.abs());
    [Complex64::new(real, 0.0), pair, pair.conj()]
}

/// Newton iteration that only accepts steps reducing the residual.
pub(crate) fn polish(
    mut r: Complex64,
    poly: &impl Fn(Complex64) -> Complex64,
    slope: &impl Fn(Complex64) -> Complex64,
) -> Complex64 {
    let mut residual = poly(r).norm();
    for _ in 0..NEWTON_MAX_ITER {
        if residual == 0.0 {
            break;
        }
        let d = slope(r);
        if d.norm() == 0.0 {
            break;
        }
        let candidate = r - poly(r) / d;
        let next = poly(candidate).norm();
        if !(next < residual) {
            break;
        }
        r = candidate;
        residual = next;
    }
    r
}
