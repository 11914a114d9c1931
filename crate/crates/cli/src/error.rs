use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("not admissible: {0} (use --force to attempt anyway)")]
    NotAdmissible(String),

    #[error("solver failed: {0}")]
    Solver(String),

    #[error("verification failed: {0} of {1} checks")]
    Verify(usize, usize),

    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(radial_nls::Error),
}

impl From<radial_nls::Error> for CliError {
    fn from(e: radial_nls::Error) -> Self {
        use radial_nls::Error as E;
        match e {
            E::Parse(m) | E::InvalidInput(m) => CliError::Config(m),
            E::NotAdmissible(m) => CliError::NotAdmissible(m),
            E::NoSignChange { .. }
            | E::NoNegativeSeed
            | E::GeometryFailed(_)
            | E::NoConvergence { .. }
            | E::NonFinite { .. } => CliError::Solver(e.to_string()),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Config(_) | CliError::NotAdmissible(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Verify(..) => 4,
            CliError::Io { .. } | CliError::Core(_) => 1,
        })
    }
}
