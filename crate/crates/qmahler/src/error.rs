//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by exact and approximate operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in Q(sqrt3)")]
    DivisionByZero,

    #[error("parity mismatch: cannot combine {0:?}-parity and {1:?}-parity polynomials")]
    ParityMismatch(crate::numbers::Parity, crate::numbers::Parity),

    #[error("coefficient index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("parameter outside the formula's domain: {0}")]
    Domain(String),

    #[error("degenerate parameters |a| = |b|: the closed forms divide by a^3 - b^3")]
    DegenerateMagnitude,

    #[error("unsupported phase: sin/cos of {0} pi is not in Q(sqrt3)")]
    UnsupportedPhase(crate::numbers::Rational),

    #[error("series truncation order {order} too small: need coefficient of T^{needed}")]
    TruncationOrder { order: i64, needed: i64 },

    #[error("series reciprocal requires a nonzero constant leading coefficient")]
    NonConstantLeading,

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("requested precision not reachable: {0}")]
    PrecisionUnreachable(String),

    #[error("unknown identity: {0}")]
    UnknownIdentity(String),

    #[error("quadrature failed to converge after {0} subdivisions")]
    QuadratureNonConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
