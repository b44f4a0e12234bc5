use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("polynomial degree {degree} exceeds the limit of {limit}")]
    DegreeOverflow { degree: usize, limit: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("size guard: {what} = {got} exceeds {limit}")]
    SizeGuard {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("not in normal form: {0}")]
    NotInNormalForm(String),
    #[error("truncation order {got} is too small, need at least {needed}")]
    InsufficientTruncation { needed: usize, got: usize },
    #[error("all members agree modulo t^{truncation}")]
    IndistinguishableAtTruncation { truncation: usize },
    #[error("subdivision is not fine")]
    NotFine,
    #[error("operation requires d = {expected}, got d = {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
