use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is not connected")]
    NotConnected,

    #[error("gradient undefined: total weight is zero")]
    UndefinedGradient,

    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    #[error("graph has {n} nodes, above the dense eigensolver cap of {cap}")]
    Capacity { n: usize, cap: usize },

    #[error("no candidate edges: graph is complete")]
    NoCandidates,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
