use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite integrand at node {index} (r = {r:e})")]
    NonFinite { index: usize, r: f64 },

    #[error("instance not admissible: {0}")]
    NotAdmissible(String),

    #[error("no sign change of the Nehari function after {doublings} doublings")]
    NoSignChange { doublings: usize },

    #[error("no negative-energy seed found for lambda in [1e-8, 1]")]
    NoNegativeSeed,

    #[error("mountain-pass geometry failed: {0}")]
    GeometryFailed(String),

    #[error("no convergence after {iterations} iterations (weak residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("growth envelope unbounded: {0}")]
    Unbounded(String),

    #[error("structural check inconsistent: {0}")]
    Inconsistent(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
