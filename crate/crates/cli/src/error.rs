use std::path::PathBuf;

use thiserror::Error;

/// Exit status for a run that completed and passed.
pub const EXIT_OK: i32 = 0;
/// Exit status for a failed verification check.
pub const EXIT_VERIFICATION: i32 = 1;
/// Exit status for bad configuration, input or output paths.
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid config file {path}: {source}")]
    ConfigFile {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("rejected input: {0}")]
    Core(#[from] photon_bell_core::Error),
    #[error("verification failed: {check}")]
    Verification { check: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification { .. } => EXIT_VERIFICATION,
            _ => EXIT_CONFIG,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
