use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in Q(q)")]
    DivisionByZero,
    #[error("pole of order > 1 at omega = 0")]
    EssentialPole,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("linear system has no solution ({0})")]
    NoSolution(String),
    #[error("linear system solution is not unique ({0})")]
    NonUnique(String),
}

pub type Result<T> = std::result::Result<T, Error>;
