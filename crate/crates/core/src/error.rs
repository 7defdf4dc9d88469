use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unsupported arity {0} for this operation")]
    UnsupportedArity(usize),

    #[error("no valid samples in region: {0}")]
    EmptyRegion(String),

    /// A defining relation of the manifold was not recovered in the numeric
    /// nullspace. Indicates a sampling or basis bug, never a property of the
    /// system under study.
    #[error("known relation `{name}` missing from numeric nullspace (projection residual {residual:.3e})")]
    KnownRelationMissing { name: String, residual: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
