use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the growth-capacity library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("not a real surd: radicand {0} is negative")]
    NegativeRadicand(BigInt),
    #[error("incomparable exactly: radicands {0} and {1} differ")]
    Incomparable(BigInt, BigInt),
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational input: finite expansion")]
    RationalInput,
    #[error("undefined for n=0")]
    ZeroIndex,
    #[error("fraction not irreducible: {0}/{1}")]
    NotIrreducible(BigInt, BigInt),
    #[error("cusp at infinity")]
    CuspAtInfinity,
    #[error("non-finite coordinates")]
    NonFinite,
    #[error("point is not in the upper half-plane (Im must be > 0)")]
    NotInUpperHalfPlane,
    #[error("determinant must be 1, got {0}")]
    BadDeterminant(BigInt),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("iteration cap of {0} exceeded")]
    IterationCap(usize),
    #[error("t = {0} lies outside the profile range")]
    OutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }
}
