use thiserror::Error;

/// Errors raised by the algebra kernel and the manifest loader.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("invalid exponent at byte {offset}: {message}")]
    BadExponent { offset: usize, message: String },

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected}, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: i32, found: String },

    #[error("twist did not terminate within {bound} brackets; twisting function is not eligible")]
    TwistDiverged { bound: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
