use thiserror::Error;

use crate::numeric::Rational;

/// Errors raised by the analysis engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point {x} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { x: Rational, lo: Rational, hi: Rational },
    #[error("invalid function model: {0}")]
    InvalidModel(String),
    #[error("invalid interval set: {0}")]
    InvalidIntervalSet(String),
}

pub type Result<T> = std::result::Result<T, Error>;
