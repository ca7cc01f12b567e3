use thiserror::Error;

/// Library-wide error type.
///
/// The variants map onto the CLI exit-code contract: validation-class
/// failures (bad inputs, domain violations, malformed files) exit with 1,
/// numeric-class failures (non-convergence, overflow, impractical rejection
/// rates) exit with 2.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally invalid input (dimension mismatch, norm violation, ...).
    #[error("invalid input: {0}")]
    Validation(String),

    /// An iterative scheme failed to converge or an intermediate overflowed.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A spectrum is too close to degenerate for the requested closed form.
    #[error("degenerate spectrum: {0}")]
    Degenerate(String),

    /// An exact algorithm exists but is impractical for these parameters.
    #[error("impractical configuration: {0}")]
    Practicality(String),

    /// Malformed input file; carries enough context to locate the problem.
    #[error("ingestion error: {0}")]
    Ingestion(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit code for the CLI contract: 1 validation-class, 2 numeric-class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::Validation(_)
            | Error::Degenerate(_)
            | Error::Ingestion(_)
            | Error::Io(_)
            | Error::Json(_) => 1,
            Error::Numeric(_) | Error::Practicality(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
