use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max deviation of U U^dagger from identity {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("initial marginal of subsystem {subsystem} is not thermal at the declared temperature (deviation {deviation:.3e})")]
    NotThermal { subsystem: char, deviation: f64 },

    #[error("reduced channel has no eigenvalue near 1 (smallest singular value of M - I is {smallest:.3e})")]
    FixedPointNotFound { smallest: f64 },

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of a numerical routine rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::FixedPointNotFound { .. } | Error::RootFinding(_)
        )
    }

    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
