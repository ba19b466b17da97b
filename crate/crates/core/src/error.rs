use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input root {path} is not a readable directory: {reason}")]
    InputRoot { path: PathBuf, reason: String },

    #[error("invalid glob pattern `{pattern}`: {reason}")]
    Glob { pattern: String, reason: String },

    #[error("{path}:{line}:{column}: parse error: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("manifest {path}: {message}")]
    Manifest { path: PathBuf, message: String },

    #[error("manifest {path}: entry {index}: {message}")]
    ManifestEntry {
        path: PathBuf,
        index: usize,
        message: String,
    },

    #[error("matrix {path}: {message}")]
    Matrix { path: PathBuf, message: String },

    #[error("empty manifest: at least one release is required")]
    EmptyManifest,

    #[error("insufficient releases: need at least {needed}, got {got}")]
    InsufficientReleases { needed: usize, got: usize },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
