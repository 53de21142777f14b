use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("{{{0},{1}}} is not an edge of X")]
    NotAnEdge(usize, usize),

    #[error("swap on {{{a},{b}}} is not friendly: {{{ya},{yb}}} is not an edge of Y")]
    Unfriendly { a: usize, b: usize, ya: usize, yb: usize },

    #[error("swap {index} rejected: {reason}")]
    InvalidStep { index: usize, reason: Box<Error> },

    #[error("budget exceeded: {what} (limit {limit}, reached {reached})")]
    Budget { what: String, limit: u64, reached: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, limit: u64, reached: u64) -> Self {
        Error::Budget { what: what.into(), limit, reached }
    }

    /// Whether the error came from a resource cap rather than bad input.
    pub fn is_budget(&self) -> bool {
        match self {
            Error::Budget { .. } => true,
            Error::InvalidStep { reason, .. } => reason.is_budget(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
