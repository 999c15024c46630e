//! Library surface of the gatecraft batch front end; the binary in `main.rs`
//! is a thin argument-parsing wrapper over [`commands`].

pub mod commands;
pub mod config;
pub mod report;

use thiserror::Error;

/// Command-level errors, mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("did not converge: {0}")]
    NonConvergence(String),
    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    /// 0 success, 2 validation error, 3 numeric failure, 4 non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 3,
            CliError::NonConvergence(_) => 4,
        }
    }
}

impl From<gatecraft_core::CoreError> for CliError {
    fn from(e: gatecraft_core::CoreError) -> Self {
        use gatecraft_core::CoreError as E;
        match &e {
            E::InvalidParameter(_) | E::UnsupportedSchedule(_) | E::OutOfScope(_) => {
                CliError::Validation(e.to_string())
            }
            E::Numeric(_) | E::Labeling(_) | E::UndefinedPhase(_) => {
                CliError::Numeric(e.to_string())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Validation("x".into()).exit_code(), 2);
        assert_eq!(CliError::Numeric("x".into()).exit_code(), 3);
        assert_eq!(CliError::Io("x".into()).exit_code(), 3);
        assert_eq!(CliError::NonConvergence("x".into()).exit_code(), 4);
    }

    #[test]
    fn core_error_mapping() {
        use gatecraft_core::CoreError;
        let v: CliError = CoreError::InvalidParameter("p".into()).into();
        assert_eq!(v.exit_code(), 2);
        let n: CliError = CoreError::Numeric("n".into()).into();
        assert_eq!(n.exit_code(), 3);
    }
}
