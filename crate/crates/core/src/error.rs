use thiserror::Error;

/// Errors surfaced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed row {row}, column `{column}`: {message}")]
    MalformedRow {
        row: usize,
        column: String,
        message: String,
    },

    #[error("unknown category `{value}` for column `{column}` at row {row}")]
    UnknownCategory {
        row: usize,
        column: String,
        value: String,
    },

    #[error("missing outcome cell at row {row}")]
    MissingOutcome { row: usize },

    #[error("empty dataset")]
    EmptyDataset,

    #[error("schema error: {0}")]
    Schema(String),

    #[error("moving window needs >=2 years")]
    SingleYear,

    #[error("single-class outcome")]
    SingleClassOutcome,

    #[error("group `{0}` has a single outcome class")]
    SingleClassGroup(String),

    #[error("unknown group label `{0}`")]
    UnknownGroup(String),

    #[error("no positive labels")]
    NoPositives,

    #[error("smoothing applies to numeric shapes only (feature `{0}`)")]
    SmoothCategorical(String),

    #[error("smoothing needs >=4 bins (feature `{feature}` has {bins})")]
    SmoothTooFewBins { feature: String, bins: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("model file error: {0}")]
    ModelFormat(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
