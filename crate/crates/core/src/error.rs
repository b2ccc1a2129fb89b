use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("kick has no pointwise value")]
    KickHasNoValue,

    #[error("non-positive elapsed time (t - t1 = {0})")]
    NonPositiveElapsedTime(f64),

    #[error("kick time {t1} is later than the evaluation time {t}")]
    KickAfterEvaluation { t1: f64, t: f64 },

    #[error("asymptotic form invalid at barrier suppression (beta = {0})")]
    BarrierSuppressed(f64),

    #[error("quadrature did not converge on [{lo}, {hi}]: best estimate {estimate}, error {error:e}")]
    QuadratureNonConvergence {
        lo: f64,
        hi: f64,
        estimate: Complex64,
        error: f64,
    },

    #[error(
        "degenerate poles {poles:?} (min separation {separation:e}); the residue expansion needs \
         simple poles, use the memory-kernel ODE oracle instead"
    )]
    DegeneratePoles { poles: [Complex64; 3], separation: f64 },

    #[error("resonant denominator: pole {pole} coincides with ±i·{omega0}")]
    ResonantDenominator { pole: Complex64, omega0: f64 },

    #[error("domain too small: probability {probability:e} within {points} points of the boundary")]
    DomainTooSmall { probability: f64, points: usize },

    #[error("ODE integration unstable at t = {t}; reduce the step")]
    OdeUnstable { t: f64 },

    #[error("no sign change found while bracketing (a = {a})")]
    NoSignChange { a: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
