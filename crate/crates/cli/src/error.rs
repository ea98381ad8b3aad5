use milgrowth_core::{Error as ModelError, ErrorKind};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input, reported with the path of the offending field.
    #[error("{path}: {message}")]
    Validation { path: String, message: String },

    #[error("{0}")]
    Computation(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Validation {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Wraps a model error, prefixing field names with `path` for
    /// validation failures.
    pub fn model(path: &str, err: ModelError) -> Self {
        match err.kind() {
            ErrorKind::Validation => {
                let path = match &err {
                    ModelError::Domain { field, .. } if !path.is_empty() => {
                        format!("{path}.{field}")
                    }
                    ModelError::Domain { field, .. } => field.to_string(),
                    _ => path.to_string(),
                };
                CliError::Validation {
                    path,
                    message: err.to_string(),
                }
            }
            ErrorKind::Computation => CliError::Computation(err.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 1,
            CliError::Computation(_) | CliError::Io { .. } => 2,
        }
    }

    /// Machine-parsable stderr line: `error[<class>] <detail>`.
    pub fn report(&self) -> String {
        let class = match self {
            CliError::Validation { .. } => "validation",
            CliError::Computation(_) => "computation",
            CliError::Io { .. } => "io",
        };
        format!("error[{class}] {self}")
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
