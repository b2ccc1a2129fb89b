//! Poles and residues of the damped Green's function.
//!
//! With `s = Ωr` the characteristic equation becomes `r³ + ar² + br − a = 0`,
//! `a = ω_D/Ω`, `b = γω_D/Ω² − 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::BathParams;
use crate::numerics::cubic::{cardano_invariants, polish, solve_cubic};
use crate::params::SystemParams;
use crate::{Error, Result};

/// Relative pairwise pole separation below which poles count as repeated.
const DEGENERATE_SEPARATION: f64 = 1e-8;
/// `|D|` below this multiple of `ε(q² + |p|³)` is rounding noise.
const DEGENERATE_DISCRIMINANT: f64 = 256.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicCoefficients {
    pub a: f64,
    pub b: f64,
    pub q: f64,
    pub p: f64,
    /// `D = q² + p³`.
    pub discriminant: f64,
}

impl CubicCoefficients {
    pub fn from_ab(a: f64, b: f64) -> Self {
        let inv = cardano_invariants(a, b, -a);
        CubicCoefficients {
            a,
            b,
            q: inv.q,
            p: inv.p,
            discriminant: inv.discriminant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootClass {
    OneRealTwoComplex,
    ThreeReal,
    DegenerateReal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleDecomposition {
    pub poles: [Complex64; 3],
    pub residues: [Complex64; 3],
    pub coefficients: CubicCoefficients,
    pub root_class: RootClass,
}

impl PoleDecomposition {
    /// `(Σ R_j, Σ R_j s_j, Σ R_j s_j²)`, ideally `(0, 1, 0)`.
    pub fn sum_rules(&self) -> [Complex64; 3] {
        let mut sums = [Complex64::default(); 3];
        for (s, r) in self.poles.iter().zip(&self.residues) {
            sums[0] += r;
            sums[1] += r * s;
            sums[2] += r * s * s;
        }
        sums
    }
}

pub fn characteristic_coefficients(params: &SystemParams, bath: &BathParams) -> CubicCoefficients {
    let omega = params.omega;
    CubicCoefficients::from_ab(
        bath.omega_d / omega,
        bath.gamma * bath.omega_d / (omega * omega) - 1.0,
    )
}

/// Poles `s_j` and residues `R_j = 1/(2s_j + γω_D²/(s_j + ω_D)²)`.
///
/// Requires `γ > 0`; use [`super::GreenFunction::new`] for the general case.
pub fn solve_poles(params: &SystemParams, bath: &BathParams) -> Result<PoleDecomposition> {
    params.validate()?;
    bath.validate()?;
    if bath.gamma == 0.0 {
        return Err(Error::invalid(
            "gamma",
            "pole expansion needs gamma > 0; the undamped Green's function is sinh(Ωt)/Ω",
        ));
    }
    let coefficients = characteristic_coefficients(params, bath);
    let omega = params.omega;
    let (wd, g) = (bath.omega_d, bath.gamma);
    let c1 = g * wd - omega * omega;
    let c0 = -omega * omega * wd;
    let poly = |s: Complex64| ((s + wd) * s + c1) * s + c0;
    let slope = |s: Complex64| (3.0 * s + 2.0 * wd) * s + c1;

    let roots = solve_cubic(coefficients.a, coefficients.b, -coefficients.a);
    let mut poles = roots.map(|r| polish(r * omega, &poly, &slope));
    use RootClass::*;
    let CubicCoefficients {
        q, p, discriminant, ..
    } = coefficients;
    let root_class = if discriminant.abs() <= DEGENERATE_DISCRIMINANT * (q * q + p.abs().powi(3)) {
        DegenerateReal
    } else if discriminant > 0.0 {
        OneRealTwoComplex
    } else {
        ThreeReal
    };
    if root_class == OneRealTwoComplex {
        poles[0].im = 0.0;
        poles[2] = poles[1].conj();
    } else {
        poles.iter_mut().for_each(|s| s.im = 0.0);
    }

    let separation = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .map(|(i, j)| (poles[i] - poles[j]).norm())
        .fold(f64::INFINITY, f64::min);
    if root_class == DegenerateReal || separation < DEGENERATE_SEPARATION * omega {
        return Err(Error::DegeneratePoles { poles, separation });
    }

    let residues = poles.map(|s| {
        let shifted = s + wd;
        (2.0 * s + g * wd * wd / (shifted * shifted)).inv()
    });
    Ok(PoleDecomposition {
        poles,
        residues,
        coefficients,
        root_class,
    })
}

/// `b` on the critical line `D(a, b) = 0` separating one real root from
/// three.
pub fn discriminant_boundary(a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::invalid(
            "a",
            format!("must be positive and finite, got {a}"),
        ));
    }
    let d = |b: f64| CubicCoefficients::from_ab(a, b).discriminant;
    // p = 0 at b = a²/3, so D ≥ 0 there; D → −∞ as b → −∞
    let mut hi = a * a / 3.0;
    if d(hi) == 0.0 {
        return Ok(hi);
    }
    let mut width = (a * a).max(1.0);
    let mut lo = hi - width;
    let mut grown = 0;
    while d(lo) >= 0.0 {
        hi = lo;
        width *= 2.0;
        lo -= width;
        grown += 1;
        if grown > 200 || !lo.is_finite() {
            return Err(Error::NoSignChange { a });
        }
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if d(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if d(lo).abs() < d(hi).abs() { lo } else { hi })
}
