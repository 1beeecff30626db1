use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The excited-state amplitude vanishes, so ψ̇/ψ is undefined.
    #[error("pole condition: excited-state amplitude vanishes at t = {t}")]
    Pole { t: f64 },

    #[error("integration failure at t = {t}: {reason}")]
    Integration { t: f64, reason: String },

    #[error("quadrature did not reach tolerance {tol:e} (estimated error {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },

    #[error("band truncation keeps only {captured:.5} of the packet norm (need {required})")]
    Truncation { captured: f64, required: f64 },

    #[error("unitarity drift {drift:e} exceeds {limit:e} at t = {t}")]
    Unitarity { drift: f64, limit: f64, t: f64 },

    #[error("field not clear of the box boundary: margin probability {margin:e}")]
    BoundaryContamination { margin: f64 },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParams(_) | Error::OutOfRange(_) | Error::Truncation { .. } => 1,
            Error::Pole { .. }
            | Error::Integration { .. }
            | Error::Quadrature { .. }
            | Error::Unitarity { .. }
            | Error::BoundaryContamination { .. } => 2,
            Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::Parse(_) | Error::Checkpoint(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
