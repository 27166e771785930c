use std::path::{Path, PathBuf};

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config key {key}: {msg}")]
    Config { key: String, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{failed} of {total} files failed")]
    PartialFailure { failed: usize, total: usize },

    #[error(transparent)]
    Core(#[from] shapesection::Error),
}

impl CliError {
    pub fn config(key: &str, msg: impl Into<String>) -> Self {
        CliError::Config {
            key: key.to_string(),
            msg: msg.into(),
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// 1 for I/O and validation failures, 2 for numerical or degenerate
    /// data.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}
