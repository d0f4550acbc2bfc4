use thiserror::Error;

/// Errors raised by the reconstruction library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("channel threshold unmet: need at least {required} distinct outputs, have {have}")]
    ThresholdUnmet { required: String, have: usize },

    /// A structure guaranteed to exist above a threshold was not found.
    #[error("no witness found: {0}")]
    NoWitness(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("minimum distance is undefined for a single-codeword code")]
    SingletonCode,

    #[error("channel contract violated: {0}")]
    ChannelContract(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True for errors caused by the caller's input rather than a fault in the library.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::LengthMismatch(..)
                | Error::InvalidParameter(_)
                | Error::ThresholdUnmet { .. }
                | Error::BudgetExceeded(_)
                | Error::SingletonCode
                | Error::Parse(_)
                | Error::Json(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
