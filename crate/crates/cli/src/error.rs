use std::fmt;
use std::process::ExitCode;

/// Failure classes with distinct exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unusable input files (exit 2).
    Usage(String),
    /// Integration or output failure (exit 3).
    Run(String),
    /// Some acceptance criterion failed (exit 1).
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Self::Verify(_) => 1,
            Self::Usage(_) => 2,
            Self::Run(_) => 3,
        })
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }

    pub fn run(msg: impl Into<String>) -> Self {
        Self::Run(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) | Self::Run(m) | Self::Verify(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

/// Library errors raised while building a configuration are the user's
/// to fix; everything else is a run failure.
pub fn classify(err: adiashort::Error) -> CliError {
    use adiashort::Error as E;
    match err {
        E::Window { .. } | E::Model(_) | E::Config(_) | E::Tolerance { .. } | E::Table(_) => {
            CliError::Usage(err.to_string())
        }
        other => CliError::Run(other.to_string()),
    }
}

pub type CliResult<T> = Result<T, CliError>;
