use thiserror::Error;

/// Errors raised anywhere in the simulation pipeline.
#[derive(Debug, Error)]
pub enum MixerError {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A drive or scenario configuration is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    /// A scenario file failed validation; one entry per offending field.
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),

    /// Quadrature or a linear solve did not produce a usable result.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// The integrator produced a non-finite or unphysical state.
    #[error("integration failed at t = {time:e} s: {reason}")]
    Integration { time: f64, reason: String },

    /// A density matrix in the wrong frame was handed to a frame-specific observable.
    #[error("frame mismatch: expected {expected}, got {found}")]
    FrameMismatch { expected: String, found: String },

    #[error("no unique steady state: {0}")]
    NoSteadyState(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, MixerError>;
