use thiserror::Error;

/// Errors raised by the library layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("alpha must be positive and finite, got {0}")]
    InvalidAlpha(f64),

    #[error("parameter mismatch: alpha {left} vs {right}")]
    ParamMismatch { left: f64, right: f64 },

    #[error("duplicate label ({re}, {im}) at index {k}")]
    DuplicateLabel { re: f64, im: f64, k: usize },

    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("divisor is empty")]
    EmptyDivisor,

    #[error("rcond must be positive, got {0}")]
    InvalidRcond(f64),

    #[error("labels of the data vector do not match the divisor")]
    LabelMismatch,

    #[error("infeasible experiment: {0}")]
    Infeasible(String),

    #[error("generator contract violated: {0}")]
    ContractViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, FockError>;
