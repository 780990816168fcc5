use std::fmt;

use thiserror::Error;

/// Command failures, each tied to one process exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Parse(ParseError),
    #[error("input: {0}")]
    Input(String),
    #[error("disagreement: {0}")]
    Disagreement(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Malformed document; `position` is (line, column) when known.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub file: Option<String>,
    pub position: Option<(usize, usize)>,
    pub field: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("parse error")?;
        if let Some(file) = &self.file {
            write!(f, " in {file}")?;
        }
        if let Some((line, col)) = self.position {
            write!(f, " at line {line} column {col}")?;
        }
        if !self.field.is_empty() && self.field != "." {
            write!(f, ", field `{}`", self.field)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl CliError {
    pub fn parse(position: Option<(usize, usize)>, field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Parse(ParseError { file: None, position, field: field.into(), message: message.into() })
    }

    pub fn in_file(self, file: &str) -> Self {
        match self {
            CliError::Parse(mut e) => {
                e.file = Some(file.to_string());
                CliError::Parse(e)
            }
            CliError::Input(m) => CliError::Input(format!("{file}: {m}")),
            other => other,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) | CliError::Input(_) => 2,
            CliError::Disagreement(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl From<lemnis_core::Error> for CliError {
    fn from(e: lemnis_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}
