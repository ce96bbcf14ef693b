use thiserror::Error;

/// Errors reported by roadmap construction, queries, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates its documented precondition.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A start/goal configuration or other user input is unusable.
    #[error("input error: {0}")]
    Input(String),

    /// Malformed environment or roadmap file.
    #[error("format error: {0}")]
    Format(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
