//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands live in different rings: {0}")]
    RingMismatch(String),
    #[error("negative exponent in non-Laurent polynomial")]
    NegativeExponent,
    #[error("polynomial is not invariant under the requested group: {0}")]
    NotInvariant(String),
    #[error("linear system is inconsistent: {0}")]
    InconsistentSystem(String),
    #[error("expected an integral result but got a proper rational: {0}")]
    NonIntegral(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("resultant is zero (the factors share a root)")]
    ZeroResultant,
    #[error("prime/level mismatch: {0}")]
    LevelMismatch(String),
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("matrix is singular")]
    Singular,
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("characteristic polynomial does not split over the working field")]
    NonSplit,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
