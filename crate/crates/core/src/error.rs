use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A size, count or hyperparameter outside its allowed range.
    #[error("configuration error: {0}")]
    Config(String),

    /// A gate or circuit that does not fit the register it is applied to.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("binding error: {0}")]
    Binding(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("data error: {0}")]
    Data(String),

    #[error("missing required column `{0}`")]
    MissingColumn(String),

    #[error("line {line}: {message}")]
    Row { line: u64, message: String },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error on {}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("JSON error on {}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("stage {stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Short category name, used by the CLI for exit codes and messages.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Structural(_) => "structural",
            Error::Binding(_) => "binding",
            Error::Dimension { .. } => "dimension",
            Error::Data(_) => "data",
            Error::MissingColumn(_) | Error::Row { .. } | Error::Csv { .. } => "ingestion",
            Error::Io { .. } | Error::Json { .. } => "io",
            Error::Stage { source, .. } => source.category(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
