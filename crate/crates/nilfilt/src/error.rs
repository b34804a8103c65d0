//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: operands live in different rings")]
    RingMismatch,
    #[error("arity mismatch: exponent vector has length {got}, ring has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("colon by the zero ideal is undefined")]
    ColonByZero,
    #[error("exact division failed: divisor does not divide the dividend")]
    InexactDivision,
    #[error("quotient is not zero-dimensional: variable {var} has no pure power among the leading monomials")]
    NotZeroDimensional { var: String },
    #[error("containment check failed: {0}")]
    ContainmentFailed(String),
    #[error("iteration cap {cap} exceeded during {what}")]
    CapExceeded { what: &'static str, cap: u32 },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid local model: {0}")]
    InvalidModel(String),
    #[error("step {level} ({stage}): {reason}")]
    Step {
        level: u32,
        stage: &'static str,
        reason: String,
    },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("element is not a member of the ideal: {0}")]
    NotAMember(String),
}

pub type Result<T> = std::result::Result<T, Error>;
