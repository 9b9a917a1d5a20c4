use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("{what}: {count} exceeds the configured bound {bound}")]
    BudgetExceeded {
        what: &'static str,
        count: u128,
        bound: u128,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
