//! File formats: the flat config file, CSV tables, JSON run manifests and
//! SVG plots.

pub mod config;
pub mod csv;
pub mod manifest;
pub mod svg;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{origin}:{line}: {msg}")]
    Parse { origin: String, line: usize, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] crate::Error),
}

/// Shortest decimal text that parses back to the same `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:e}")
}
