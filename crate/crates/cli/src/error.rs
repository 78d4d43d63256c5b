use std::process::ExitCode;

use ivfg_core::ensemble::FusionError;
use ivfg_core::network::NetworkError;
use ivfg_core::{FgError, IntervalError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad config, flags, or a functional failing the tie check.
    #[error("{0}")]
    Config(String),
    /// Input files or values that cannot be used.
    #[error("{0}")]
    Data(String),
    /// A property expected to hold was not observed.
    #[error("{0}")]
    Property(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::Property(_) => 4,
        })
    }
}

impl From<IntervalError> for CliError {
    fn from(e: IntervalError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<FgError> for CliError {
    fn from(e: FgError) -> Self {
        match e {
            FgError::EmptyInput | FgError::LengthMismatch { .. } => CliError::Data(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<FusionError> for CliError {
    fn from(e: FusionError) -> Self {
        match e {
            FusionError::BadPartitionSpec(_) => CliError::Config(e.to_string()),
            FusionError::Fg(inner) => inner.into(),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<NetworkError> for CliError {
    fn from(e: NetworkError) -> Self {
        match e {
            NetworkError::BadWindow | NetworkError::UnknownAffinity(_) => {
                CliError::Config(e.to_string())
            }
            NetworkError::Fg(inner) => inner.into(),
            other => CliError::Data(other.to_string()),
        }
    }
}
