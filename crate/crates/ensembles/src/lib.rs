//! File formats, JSON reports, parallel enumeration and the `ensembles`
//! command-line tool built on `ensembles-core`.

pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {source}")]
    Line { line: usize, source: ensembles_core::Error },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] ensembles_core::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}
