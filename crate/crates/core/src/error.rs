use thiserror::Error;

/// Errors raised across the laboratory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field size {0} exceeds the supported maximum of 65535")]
    FieldTooLarge(u32),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("interference sum diverges (alpha = {alpha} <= d = {d})")]
    Divergent { alpha: f64, d: usize },
    #[error("singular geometry: {0}")]
    Singular(String),
    #[error("statistics error: {0}")]
    Statistics(String),
    #[error("channel `{0}` lacks the only-defects-matter property")]
    UnsupportedChannel(String),
    #[error("mutual information vanishes on the whole design grid; bound is infinite")]
    InfiniteBound,
    #[error("enumeration of {candidates} candidates exceeds the guard of {guard}")]
    EnumerationGuard { candidates: u128, guard: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
