// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitCode {
    Success = 0,
    Config = 2,
    NonConvergence = 3,
    Io = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] jcq_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        use jcq_core::Error as E;
        match self {
            CliError::Config(_) => ExitCode::Config,
            CliError::Core(E::NonConvergence { .. } | E::SweepPoint { .. }) => {
                ExitCode::NonConvergence
            }
            CliError::Core(_) => ExitCode::Config,
            CliError::Io { .. } => ExitCode::Io,
        }
    }
}
