use thiserror::Error;

/// Unified error type for the engine.
///
/// Every fallible public operation returns `Result<T, Error>`. Panics are
/// reserved for internal invariant violations (mixing scalars from
/// different fields in arithmetic ops, out-of-range indices), which always
/// indicate a bug in the caller rather than bad input data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported prime {0}: only 2, 3, 5, 7 are accepted")]
    UnsupportedPrime(u32),

    #[error("extension degree {0} out of range (1..={1})")]
    DegreeBound(usize, usize),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("no embedding found: {0}")]
    NoEmbedding(String),

    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("rewriting exceeded the step bound of {0}")]
    StepBound(usize),

    #[error("dimension bound exceeded: {0}")]
    DimensionBound(String),

    #[error("algebra error: {0}")]
    Algebra(String),

    #[error("relation incompatible with comultiplication: {0}")]
    RelationIncompat(String),

    #[error("hopf structure error: {0}")]
    Hopf(String),

    #[error("restricted Lie error: {0}")]
    Lie(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
