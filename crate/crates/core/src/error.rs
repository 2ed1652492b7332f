use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cell ({x}, {y}) is outside the {width}x{height} grid")]
    InvalidCell {
        x: usize,
        y: usize,
        width: usize,
        height: usize,
    },

    #[error("sample does not match model mode: {0}")]
    ModeMismatch(String),

    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("mask has no valid cells")]
    EmptyMask,

    #[error("distribution undefined: total mass over valid cells is zero")]
    UndefinedDistribution,

    #[error("division by zero baseline")]
    DivideByZero,

    #[error("level parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
