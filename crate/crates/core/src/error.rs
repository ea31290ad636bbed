use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument violates a precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// A numerical invariant failed to hold (for example a reduced density
    /// matrix with a clearly negative eigenvalue).
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("degenerate histogram: {0}")]
    DegenerateHistogram(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
