use std::fmt;
use std::process::ExitCode;

/// Failure of a subcommand, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Unparseable or structurally invalid input; exit status 2.
    Input(String),
    /// Well-formed input that fails a check; exit status 1.
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Validation(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Validation(msg) => write!(f, "validation failed: {msg}"),
        }
    }
}

impl From<tduality::Error> for CliError {
    fn from(e: tduality::Error) -> Self {
        use tduality::Error as E;
        match e {
            E::Normalization { .. } | E::OffLeaf { .. } | E::DegenerateOrbit { .. } | E::BlowUp { .. } => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(format!("i/o: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
