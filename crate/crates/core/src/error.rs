use thiserror::Error;

/// Errors raised by the evaluators, the linear algebra and the constructions
/// built on top of them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("numerical: {0}")]
    Numerical(String),
    #[error("size: {0}")]
    Size(String),
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("exhausted: {0}")]
    Exhaustion(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Pole(_) => "PoleError",
            Error::Domain(_) => "DomainError",
            Error::Convergence(_) => "ConvergenceError",
            Error::Numerical(_) => "NumericalError",
            Error::Size(_) => "SizeError",
            Error::IllConditioned(_) => "IllConditionedError",
            Error::Exhaustion(_) => "ExhaustionError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
