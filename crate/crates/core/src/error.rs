//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the library.
///
/// Variants carry a human readable diagnostic; the CLI prints it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Two integers were required to be coprime and are not.
    #[error("not coprime: {0}")]
    NotCoprime(String),
    /// An exact division left a remainder.
    #[error("inexact division: {0}")]
    InexactDivision(String),
    /// A coefficient denominator contains a prime not allowed by the context.
    #[error("ring violation: {0}")]
    RingViolation(String),
    /// Division by an element that evaluates to zero.
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    /// A closed form has no value at the requested root (for instance 0/0 at ξ = 1).
    #[error("degenerate root: {0}")]
    DegenerateRoot(String),
    /// A truncated expansion is too short for exact evaluation.
    #[error("truncation too short: {0}")]
    Truncation(String),
    /// A linear system that must be consistent is not.
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    /// Evaluation requested on the wrong projection component.
    #[error("projection mismatch: {0}")]
    ProjectionMismatch(String),
    /// Text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
