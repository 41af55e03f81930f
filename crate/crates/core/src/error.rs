use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("r must be an odd integer >= 3, got {0}")]
    InvalidRoot(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("no solution: the source is not in the image of the operator")]
    NoSolution,
    #[error("no solution satisfies the requested {0} gauge")]
    GaugeInfeasible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
