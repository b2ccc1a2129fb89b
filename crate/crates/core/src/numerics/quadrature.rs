//! Globally adaptive 21-point Gauss–Kronrod quadrature for real and complex
//! integrands, plus a dyadic half-line driver built on top of it.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

const MAX_DEPTH: u32 = 60;
const MAX_SEGMENTS: usize = 20_000;
const MAX_DOUBLINGS: usize = 60;

// Kronrod abscissae on [-1, 1] (positive half, descending); odd indices are
// the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Scalar types the quadrature can accumulate.
pub trait QuadValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex64;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Clone, Copy)]
struct Segment<T> {
    lo: f64,
    hi: f64,
    value: T,
    error: f64,
    at_roundoff: bool,
    depth: u32,
}

fn kronrod21<T: QuadValue>(f: &impl Fn(f64) -> T, lo: f64, hi: f64) -> Segment<T> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = T::default();
    let mut abs_sum = fc.magnitude() * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let pair = f1 + f2;
        kronrod = kronrod + pair * WGK[j];
        abs_sum += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let diff = ((kronrod - gauss) * half).magnitude();
    let roundoff = 50.0 * f64::EPSILON * abs_sum * half.abs();
    Segment {
        lo,
        hi,
        value,
        error: diff.max(roundoff),
        at_roundoff: diff <= roundoff,
        depth: 0,
    }
}

/// Adaptive integral of `f` over `[lo, hi]`, refined until the summed error
/// estimate is below `max(abs_tol, rel_tol·|I|)` or only roundoff remains.
pub fn integrate_adaptive<T: QuadValue>(
    f: impl Fn(f64) -> T,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadratureResult<T>> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid("bounds", format!("[{lo}, {hi}] is not finite")));
    }
    if lo == hi {
        return Ok(QuadratureResult {
            value: T::default(),
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    if lo > hi {
        let r = integrate_adaptive(f, hi, lo, abs_tol, rel_tol)?;
        return Ok(QuadratureResult {
            value: r.value * -1.0,
            ..r
        });
    }

    let mut segments = vec![kronrod21(&f, lo, hi)];
    let mut evaluations = 21;
    loop {
        let total = segments.iter().fold(T::default(), |acc, s| acc + s.value);
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let magnitude = total.magnitude();
        if !magnitude.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureNonConvergence {
                lo,
                hi,
                estimate: total.to_complex(),
                error,
            });
        }
        let tolerance = abs_tol.max(rel_tol * magnitude);
        let worst = segments
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.at_roundoff)
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .map(|(i, _)| i);
        let Some(worst) = worst.filter(|_| error > tolerance) else {
            return Ok(QuadratureResult {
                value: total,
                error_estimate: error,
                evaluations,
            });
        };
        let seg = segments[worst];
        if seg.depth >= MAX_DEPTH || segments.len() >= MAX_SEGMENTS {
            return Err(Error::QuadratureNonConvergence {
                lo,
                hi,
                estimate: total.to_complex(),
                error,
            });
        }
        let mid = 0.5 * (seg.lo + seg.hi);
        let mut left = kronrod21(&f, seg.lo, mid);
        let mut right = kronrod21(&f, mid, seg.hi);
        left.depth = seg.depth + 1;
        right.depth = seg.depth + 1;
        evaluations += 42;
        segments[worst] = left;
        segments.push(right);
    }
}

/// Sum of adaptive integrals over consecutive pieces `points[i]..points[i+1]`.
pub fn integrate_pieces<T: QuadValue>(
    f: impl Fn(f64) -> T,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<T> {
    let pieces = points.len().saturating_sub(1).max(1) as f64;
    points.windows(2).try_fold(T::default(), |acc, w| {
        integrate_adaptive(&f, w[0], w[1], abs_tol / pieces, rel_tol).map(|r| acc + r.value)
    })
}

/// `∫_0^∞ f`, see [`integrate_halfline_from`].
pub fn integrate_halfline<T: QuadValue>(
    f: impl Fn(f64) -> T,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadratureResult<T>> {
    integrate_halfline_from(f, 0.0, 1.0, abs_tol, rel_tol)
}

/// `∫_lo^∞ f` over dyadically doubling intervals `[lo, lo+w], [lo+w, lo+3w], …`.
///
/// Stops once two consecutive intervals each contribute less than
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_halfline_from<T: QuadValue>(
    f: impl Fn(f64) -> T,
    lo: f64,
    first_width: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadratureResult<T>> {
    if !(first_width > 0.0) || !lo.is_finite() {
        return Err(Error::invalid("first_width", "must be positive"));
    }
    let mut total = T::default();
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut small_run = 0;
    let (mut a, mut width) = (lo, first_width);
    for _ in 0..MAX_DOUBLINGS {
        let piece = integrate_adaptive(&f, a, a + width, 0.25 * abs_tol, rel_tol)?;
        total = total + piece.value;
        error += piece.error_estimate;
        evaluations += piece.evaluations;
        if piece.value.magnitude() < abs_tol.max(rel_tol * total.magnitude()) {
            small_run += 1;
            if small_run == 2 {
                return Ok(QuadratureResult {
                    value: total,
                    error_estimate: error,
                    evaluations,
                });
            }
        } else {
            small_run = 0;
        }
        a += width;
        width *= 2.0;
    }
    Err(Error::QuadratureNonConvergence {
        lo,
        hi: f64::INFINITY,
        estimate: total.to_complex(),
        error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_and_trig() {
        let r = integrate_adaptive(|x: f64| x * x, 0.0, 1.0, 1e-14, 0.0).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-14);
        let r = integrate_adaptive(f64::sin, 0.0, PI, 1e-12, 0.0).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn kronrod_rule_is_exact_for_degree_31() {
        // a single K21 panel integrates x^30 exactly on [-1, 1]
        let seg = kronrod21(&|x: f64| x.powi(30), -1.0, 1.0);
        assert!((seg.value - 2.0 / 31.0).abs() < 1e-15);
    }

    #[test]
    fn trajectory_kernel_integral() {
        let r = integrate_adaptive(|s: f64| (1.0 - s).sinh(), 0.0, 1.0, 0.0, 1e-13).unwrap();
        assert!((r.value - (1f64.cosh() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn reversed_and_empty_intervals() {
        let r = integrate_adaptive(|x: f64| x, 1.0, 0.0, 1e-14, 0.0).unwrap();
        assert!((r.value + 0.5).abs() < 1e-15);
        let r = integrate_adaptive(|x: f64| x, 2.0, 2.0, 1e-14, 0.0).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(integrate_adaptive(|x: f64| x, 0.0, f64::INFINITY, 1e-14, 0.0).is_err());
    }

    #[test]
    fn complex_integrand() {
        // ∫_0^π e^{ix} dx = 2i
        let r = integrate_adaptive(|x: f64| Complex64::new(0.0, x).exp(), 0.0, PI, 1e-14, 0.0).unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn singular_integrand_reports_non_convergence() {
        let r = integrate_adaptive(|x: f64| 1.0 / x, 0.0, 1.0, 1e-10, 0.0);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn error_estimates_bound_true_error() {
        type Case = (Box<dyn Fn(f64) -> f64>, f64, f64, f64);
        let cases: Vec<Case> = vec![
            (Box::new(|x| x.exp()), 0.0, 1.0, 1f64.exp() - 1.0),
            (Box::new(|x| 1.0 / (1.0 + x * x)), 0.0, 1.0, PI / 4.0),
            (Box::new(|x| x.sqrt()), 0.0, 1.0, 2.0 / 3.0),
            (Box::new(|x| x.ln()), 1e-300, 1.0, -1.0),
            (Box::new(|x| (-x * x).exp()), -10.0, 10.0, PI.sqrt()),
            (Box::new(|x| (10.0 * x).cos()), 0.0, 1.0, 10f64.sin() / 10.0),
            (Box::new(|x| x.abs()), -1.0, 2.0, 2.5),
            (
                Box::new(|x| 1.0 / (1.0 + 25.0 * x * x)),
                -1.0,
                1.0,
                0.4 * 5f64.atan(),
            ),
            (Box::new(|x| x.powi(7) - 2.0 * x), 0.0, 2.0, 32.0 - 4.0),
            (Box::new(|x| (x.sin()).powi(2)), 0.0, 2.0 * PI, PI),
        ];
        for (i, (f, lo, hi, exact)) in cases.iter().enumerate() {
            let r = integrate_adaptive(f, *lo, *hi, 1e-10, 1e-10).unwrap();
            let err = (r.value - exact).abs();
            assert!(
                err <= 10.0 * r.error_estimate,
                "case {i}: {err:e} > 10×{:e}",
                r.error_estimate
            );
            assert!(err < 1e-9, "case {i}: {err:e}");
        }
    }

    #[test]
    fn half_line_integrals() {
        let r = integrate_halfline(|x: f64| (-x).exp(), 1e-13, 0.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = integrate_halfline(|x: f64| 1.0 / (1.0 + x * x), 1e-12, 0.0).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-11);
    }

    #[test]
    fn pieces_sum_to_whole() {
        let whole = integrate_adaptive(|x: f64| x.cos(), 0.0, 3.0, 1e-14, 0.0)
            .unwrap()
            .value;
        let split = integrate_pieces(|x: f64| x.cos(), &[0.0, 0.5, 2.0, 3.0], 1e-14, 0.0).unwrap();
        assert!((whole - split).abs() < 1e-14);
    }
}
