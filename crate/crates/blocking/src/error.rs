use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("sector mismatch: configuration has N = {found}, expected {expected}")]
    SectorMismatch { expected: i64, found: i64 },
    #[error("long-range energy diverges: {0}")]
    Divergence(String),
    #[error("{count} transitions escape the state set, first: {first}")]
    Closure { count: usize, first: String },
    #[error("empty state set")]
    EmptyStates,
    #[error("state {0} is absorbing: total rate is zero")]
    Absorbing(usize),
    #[error("inconsistent evaluation: {0}")]
    Inconsistent(String),
    #[error("1 - t*Q^{0} has no formal inverse")]
    NotInvertible(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
