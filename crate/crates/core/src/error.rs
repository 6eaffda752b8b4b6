use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("unexpected similarity is undefined for a zero expected intersection")]
    UndefinedSimilarity,

    #[error("strategy {strategy} failed: {reason}")]
    StrategyFailed { strategy: String, reason: String },

    #[error("generation error: {0}")]
    Generation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag, used for the CLI's diagnostic stream.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::InvalidCut(_) => "invalid-cut",
            Error::Parse { .. } => "parse",
            Error::ResourceLimit(_) => "resource-limit",
            Error::UndefinedSimilarity => "undefined-similarity",
            Error::StrategyFailed { .. } => "strategy-failed",
            Error::Generation(_) => "generation",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
