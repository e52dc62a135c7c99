use thiserror::Error;

/// Errors produced by the numerical and algebraic routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0} (only 2 and 4 are implemented)")]
    UnsupportedDimension(usize),

    #[error("derivative order {0} not supported (maximum is {max})", max = crate::jet::MAX_ORDER)]
    UnsupportedOrder(usize),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("coverage gap at x = {at}: no partition member is nonzero")]
    CoverageGap { at: f64 },

    #[error("function has no compact support")]
    NoCompactSupport,

    #[error(
        "finite-part pairing diverged: subtraction order {order_used} \
         for singular order {singular_order} (estimate {value:e} +/- {error:e})"
    )]
    Divergent {
        order_used: usize,
        singular_order: usize,
        value: f64,
        error: f64,
    },

    #[error("quadrature did not converge after {panels} panels (error estimate {error:e})")]
    NoConvergence { panels: usize, error: f64 },

    #[error("non-finite integrand value at x = {0}")]
    NonFinite(f64),

    #[error("momentum below threshold: k^2 = {ksq}, 4 m^2 = {threshold}")]
    BelowThreshold { ksq: f64, threshold: f64 },

    #[error("momentum at threshold k^2 = 4 m^2 = {0}")]
    AtThreshold(f64),

    #[error("lightlike momentum (k^2 = 0)")]
    Lightlike,

    #[error("regulator profile has nonvanishing boundary terms at u = {at}")]
    BoundaryTerms { at: f64 },

    #[error("smearing radius {radius} outside the admissible range [{min}, {max}]")]
    RadiusOutOfRange { radius: f64, min: f64, max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
