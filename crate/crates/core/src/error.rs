use thiserror::Error;

/// Error type shared by every module in the crate.
///
/// The variants map onto the CLI exit codes: configuration problems are
/// user-fixable (exit 2), numerics/search/geometry failures are runtime
/// problems (exit 3), and I/O is exit 4.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("numerics error: {0}")]
    Numerics(String),
    #[error("search failed: {0}")]
    SearchFailure(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("training error: {0}")]
    Training(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CoreError {
    pub fn config(msg: impl Into<String>) -> Self {
        CoreError::Config(msg.into())
    }
    pub fn data(msg: impl Into<String>) -> Self {
        CoreError::Data(msg.into())
    }
    pub fn numerics(msg: impl Into<String>) -> Self {
        CoreError::Numerics(msg.into())
    }
    pub fn geometry(msg: impl Into<String>) -> Self {
        CoreError::Geometry(msg.into())
    }
}
