use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("{what} exceeds cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown name: {0}")]
    Unknown(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
