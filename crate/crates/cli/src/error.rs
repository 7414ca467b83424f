use prd_core::PrdError;
use thiserror::Error;

/// Failures of a CLI command, each tied to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),

    #[error("{0}")]
    Dimension(String),

    #[error("{0}")]
    Normalization(String),

    #[error("missing classes: {}", join_ids(.0))]
    MissingClasses(Vec<i32>),

    #[error("{0}")]
    Io(String),

    #[error(transparent)]
    Prd(#[from] PrdError),
}

fn join_ids(ids: &[i32]) -> String {
    ids.iter().map(i32::to_string).collect::<Vec<_>>().join(",")
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Dimension(_) | CliError::Prd(PrdError::Dimension { .. }) => 3,
            CliError::Normalization(_) => 4,
            CliError::MissingClasses(_) => 5,
            CliError::Io(_) | CliError::Prd(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "parse",
            3 => "dimension",
            4 => "normalization",
            5 => "missing_class",
            _ => "runtime",
        }
    }

    /// One line: `error_code=<n> kind=<kind> <message>`.
    pub fn report_line(&self) -> String {
        let msg = self.to_string().replace(['\n', '\r'], " ");
        format!(
            "error_code={} kind={} {}",
            self.exit_code(),
            self.kind(),
            msg
        )
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        CliError::Io(format!("{}: {err}", path.display()))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
