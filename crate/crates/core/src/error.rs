use thiserror::Error;

/// Errors raised by the workbench.
///
/// Everything except `Io` and `Json` is a usage error: the caller handed in
/// something malformed. Property violations (a map turning out singular) are
/// not errors; they show up as failures inside a verification report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("invalid algebra level {0} (expected 1, 2, 4 or 8)")]
    InvalidLevel(usize),

    #[error("cannot embed level {from} into level {to}")]
    InvalidEmbedding { from: usize, to: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown map id `{0}`")]
    UnknownMap(String),

    #[error("invalid parameters for `{id}`: {reason}")]
    InvalidParameters { id: String, reason: String },

    #[error("malformed tensor: {0}")]
    MalformedTensor(String),

    #[error("malformed pattern `{pattern}`: {reason}")]
    MalformedPattern { pattern: String, reason: String },

    #[error("pattern incompatible with map: {0}")]
    IncompatiblePattern(String),

    #[error("{0} must be nonzero")]
    ZeroVector(&'static str),

    #[error("cannot parse `{0}` as a rational number")]
    ParseScalar(String),

    #[error("{0} must be positive")]
    NonPositive(&'static str),

    #[error("bound source `{0}` has no passing verification on record")]
    UnverifiedSource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
