//! Library side of the `ncsim` command-line front end: experiment
//! configuration, named presets, command implementations and report
//! rendering. The binary in `main.rs` is a thin argument-parsing shell.

pub mod commands;
pub mod config;
pub mod presets;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid or missing configuration (exit code 2).
    #[error("{0}")]
    Config(String),
    /// An enumeration guard was exceeded (exit code 3).
    #[error("{0}")]
    Guard(String),
    /// Input/output failure (exit code 4).
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<ncsim::Error> for CliError {
    fn from(e: ncsim::Error) -> Self {
        match e {
            ncsim::Error::Guard(m) => CliError::Guard(m),
            other => CliError::Config(other.to_string()),
        }
    }
}
