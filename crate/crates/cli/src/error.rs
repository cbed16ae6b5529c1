use std::fmt;

use fischer_core::{Error as CoreError, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("cannot parse {what} {text:?}: {source}")]
    Parse {
        what: &'static str,
        text: String,
        source: ParseError,
    },
    #[error("cannot read scenario: {0}")]
    Scenario(#[from] serde_json::Error),
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 3 flags an internal verification failure; every other error is bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::VerificationFailed(_)) => 3,
            _ => 2,
        }
    }

    pub fn input(msg: impl fmt::Display) -> Self {
        CliError::Input(msg.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
