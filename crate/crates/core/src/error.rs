use thiserror::Error;

use crate::algebra::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree audit failed: {0}")]
    NonContracting(String),
    #[error("truncation insufficient: {0}")]
    Validity(String),
    #[error("form is not closed: {0}")]
    NotClosed(String),
    #[error("unexpected nu^0 term: {0}")]
    NuZeroTerm(String),
    #[error("element is not divisible by nu: {0}")]
    NotDivisibleByNu(String),
    #[error("{0}: antisymmetric degree 0 component present")]
    ZeroFormDegree(String),
    #[error("no classical momentum map: {0}")]
    NotStronglyHamiltonian(String),
    #[error("no quantum momentum map: {0}")]
    NoQuantumMomentumMap(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
