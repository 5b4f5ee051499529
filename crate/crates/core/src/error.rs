use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("derivation order must be positive, got {0}")]
    ZeroDerivation(u32),
    #[error("divergent series: {0}")]
    Divergent(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("lambda {0} is a positive integer")]
    PositiveIntegerLambda(String),
    #[error("lambda {lambda} too large for cutoff {cutoff} (need lambda < cutoff/2)")]
    LambdaTooLarge { lambda: String, cutoff: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
