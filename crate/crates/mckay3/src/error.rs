//! Error type shared by every stage of the pipeline.

use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into two families: domain errors (bad input) and
/// consistency failures (a verified invariant did not hold).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("determinant ≠ 1")]
    Determinant,
    #[error("group exceeds cap of {0} elements")]
    Cap(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("non-integer multiplicity")]
    NonIntegerMultiplicity,
    #[error("non-integer numerator")]
    NonIntegerNumerator,
    #[error("eigenvector check failed")]
    Eigenvector,
    #[error("peeling did not terminate")]
    PeelingStalled,
    #[error("identity check failed")]
    IdentityCheck,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by invalid input rather than a failed invariant.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::DivisionByZero
                | Error::Determinant
                | Error::Cap(_)
                | Error::InvalidParams(_)
                | Error::Parse(_)
                | Error::Dimension(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
