// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyInput,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("graph has {n} nodes; exact enumeration is limited to {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("malformed weight file: {0}")]
    Format(String),

    #[error("weight file format version {found} is not supported (expected {supported})")]
    Version { found: u32, supported: u32 },

    #[error("data mismatch: {0}")]
    Mismatch(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) => 2,
            Error::Mismatch(_) | Error::Shape(_) => 3,
            Error::Numeric(_) => 4,
            _ => 1,
        }
    }
}
