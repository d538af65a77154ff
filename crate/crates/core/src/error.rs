use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{what}: degree {degree} exceeds cap {cap}")]
    UnsupportedDegree {
        what: &'static str,
        degree: usize,
        cap: usize,
    },
    #[error("field is not Galois over Q")]
    NotGalois,
    #[error("branch search failed: {0}")]
    BranchSearch(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("numerical refinement did not converge: {0}")]
    Refinement(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
