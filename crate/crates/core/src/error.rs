use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraverError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("vector is not a member of the lattice")]
    Membership,

    #[error("resource cap exceeded: {what} (limit {limit})")]
    Resource { what: &'static str, limit: u64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{}: line {line}: {msg}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = GraverError> = std::result::Result<T, E>;

impl GraverError {
    /// Process exit status for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            GraverError::Parse { .. }
            | GraverError::Validation(_)
            | GraverError::Dimension { .. }
            | GraverError::Domain(_)
            | GraverError::Membership
            | GraverError::Io { .. } => 2,
            GraverError::Resource { .. } | GraverError::Overflow(_) => 3,
            GraverError::Verification(_) => 4,
        }
    }
}
