use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QcrelError {
    #[error("size mismatch in {op}: expected {expected}, found {found}")]
    SizeMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("index {index} out of range for a set of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("components are not uniform: {0}")]
    NonUniform(String),
    #[error("malformed phase: {0}")]
    MalformedPhase(String),
    #[error("not a classical relation: {0}")]
    NotClassical(String),
    #[error("groupoid mismatch: {0}")]
    GroupoidMismatch(String),
    #[error("search space of 2^{bits} candidates exceeds the cap of 2^{cap}")]
    CapExceeded { bits: usize, cap: usize },
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("promise violated: {0}")]
    PromiseViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, QcrelError>;
