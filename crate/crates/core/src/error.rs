use thiserror::Error;

use crate::scalars::Rational;

/// Failures while decoding textual inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid rational literal {0:?}")]
    Rational(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid region expression at byte {pos}: {msg}")]
    Region { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("operation requires rank {expected}, got {got}")]
    Rank { expected: usize, got: usize },
    #[error("rational function has a pole at t = {0}")]
    PoleAtPoint(Rational),
    #[error("rational function with zero denominator")]
    ZeroDenominatorPolynomial,
    #[error("tableau is not strongly generic: row {row} has integral difference between entries {i} and {j}")]
    NotStronglyGeneric { row: usize, i: usize, j: usize },
    #[error("zero denominator in row {row} at shift {z:?}")]
    DenominatorZero { row: usize, z: Vec<i64> },
    #[error("probe is not an eigenvector of c_{{{m},{k}}}")]
    NotEigenvector { m: usize, k: usize },
    #[error("derivative tableau with a swap-fixed shift is zero")]
    ZeroElement,
    #[error("non-removable singularity at the critical hyperplane for shift {0:?}")]
    NonRemovableSingularity(Vec<i64>),
    #[error("no admissible weights: {0}")]
    OrbitEmpty(String),
    #[error("free parameters clash with integrality constraints: {0}")]
    ParameterClash(String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("f is not invertible at shift {z:?}: {reason}")]
    NotInvertible { z: Vec<i64>, reason: String },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
