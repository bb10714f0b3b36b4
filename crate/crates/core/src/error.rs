use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("schema line {line}: {msg}")]
    Schema { line: usize, msg: String },

    #[error("csv line {line}: {msg}")]
    Csv { line: usize, msg: String },

    #[error("csv line {line}, column `{column}`: missing value")]
    MissingValue { line: usize, column: String },

    #[error("label column `{column}` has {count} distinct values, expected at most 2")]
    TooManyLabels { column: String, count: usize },

    #[error("dataset has no labels")]
    Unlabeled,

    #[error("training rows contain a single class")]
    SingleClass,

    #[error("class `{class}` has {count} samples, need at least {need}")]
    ClassTooSmall {
        class: String,
        count: usize,
        need: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("length mismatch: {0}")]
    Length(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("parent node lacks a class (positives {pos}, negatives {neg})")]
    PureParent { pos: f64, neg: f64 },

    #[error("k-means: k = {k} exceeds the {distinct} distinct points")]
    TooFewPoints { k: usize, distinct: usize },

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("model file: unsupported version `{0}`")]
    Version(String),

    #[error("model file truncated: {0}")]
    Truncated(String),

    #[error("model file checksum mismatch: stored {stored:08x}, computed {computed:08x}")]
    Checksum { stored: u32, computed: u32 },

    #[error("model file line {line}: {msg}")]
    Format { line: usize, msg: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors raised while fitting a model rather than reading input.
    pub fn is_fit_error(&self) -> bool {
        matches!(
            self,
            Error::SingleClass
                | Error::ClassTooSmall { .. }
                | Error::PureParent { .. }
                | Error::TooFewPoints { .. }
                | Error::Empty(_)
        )
    }
}
