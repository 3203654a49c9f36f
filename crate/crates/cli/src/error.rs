use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl HarnessError {
    /// Process exit status: 1 for bad input, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Parse { .. } | HarnessError::InvalidArgument(_) => 1,
            HarnessError::Io(_) | HarnessError::Serialize(_) => 2,
        }
    }
}
