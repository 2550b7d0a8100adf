use thiserror::Error;

use crate::algebra::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("base ring mismatch: {left} vs {right}")]
    BaseRingMismatch { left: String, right: String },
    #[error("division is not exact")]
    InexactDivision,
    #[error("matrix is not square (or empty)")]
    NonSquare,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial has degree zero")]
    ConstantPolynomial,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^31")]
    PrimeTooLarge(u64),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("rank {0} is outside the supported range 1..=12")]
    UnsupportedRank(usize),
    #[error("module is not closed under multiplication: {product} has non-integral coordinate {coordinate} = {value}")]
    NotClosedUnderMultiplication { product: String, coordinate: usize, value: String },
    #[error("basis matrix is singular")]
    SingularBasisMatrix,
    #[error("operation requires an integer base ring, got {0}")]
    NotIntegerBase(String),
    #[error("operation requires a prime field base ring, got {0}")]
    NotPrimeFieldBase(String),
    #[error("prime {0} does not fit in 64 bits")]
    PrimeOutOfRange(String),
    #[error("change-of-basis matrix is not invertible over the base ring")]
    NonUnimodular,
    #[error("invalid algebra: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidAlgebra(Vec<Violation>),
    #[error("enumeration of {needed} points exceeds the cap of {cap}")]
    BudgetExceeded { needed: String, cap: u64 },
    #[error("index form is identically zero")]
    ZeroIndexForm,
    #[error("failed to split the reduced algebra into fields within the iteration cap")]
    SplitFailure,
    #[error("no identity coordinate is a unit; affine normalization is undefined")]
    IdentityNotInBasis,
    #[error("degree {0} is degenerate (need n >= 2)")]
    DegenerateDegree(i64),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), message: message.into() }
    }
}
