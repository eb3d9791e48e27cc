use thiserror::Error;

/// Errors raised by series algebra, constructors, bounds and verifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inner series of a composition must vanish at 0, found c_0 = {0}")]
    NonzeroConstantTerm(num_complex::Complex64),

    #[error("series must have constant term 1 to take a real power, found c_0 = {0}")]
    NotUnitSeries(num_complex::Complex64),

    #[error("series must start z + ... (c_0 = 0, c_1 = 1)")]
    NotNormalized,

    #[error("truncation order {available} is too small, need at least {needed}")]
    OrderExhausted { needed: usize, available: usize },

    #[error("coefficient {index} reached magnitude {magnitude:e}; double precision is no longer trustworthy")]
    PrecisionErosion { index: usize, magnitude: f64 },

    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),

    #[error("alpha = {0} is outside [0, 1)")]
    AlphaOutOfRange(f64),

    #[error("bad index: {0}")]
    BadIndex(String),

    #[error("power p = 0 is not allowed")]
    ZeroPower,

    #[error("({n}, alpha = {alpha}) falls in regime {regime}, which is already known to be sharp")]
    WrongRegime {
        n: usize,
        alpha: f64,
        regime: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && (0.0..1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}
