use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole of the gamma function at {0}")]
    Pole(f64),
    #[error("singular kernel: {0}")]
    Singular(String),
    #[error("series failed to converge within {terms} terms")]
    NonConvergence { terms: usize },
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("divergent quantity: {0}")]
    Divergent(String),
    #[error("integrability failure: {0}")]
    Integrability(String),
    #[error("representation mismatch: {0}")]
    Mismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("step size failure: {0}")]
    StepSize(String),
    #[error("bin {bin} expects {expected:.3} counts, below the minimum of 5")]
    UnderfilledBin { bin: usize, expected: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

