use std::io;

/// CLI failure, grouped by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unsupported input: {0}")]
    InputFormat(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("corrupt stream: {0}")]
    Corrupt(String),
}

impl CliError {
    /// 1 usage, 2 input format, 3 I/O or corrupt data.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::InputFormat(_) => 2,
            CliError::Io(_) | CliError::Corrupt(_) => 3,
        }
    }
}

impl From<hound::Error> for CliError {
    fn from(e: hound::Error) -> Self {
        match e {
            hound::Error::IoError(e) => CliError::Io(e),
            other => CliError::InputFormat(other.to_string()),
        }
    }
}

impl From<mclp::Error> for CliError {
    fn from(e: mclp::Error) -> Self {
        CliError::Corrupt(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
