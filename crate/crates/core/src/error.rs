use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the calculus kernel, curve model, flow engine and the
/// experiment driver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite value in {what} at index {index}")]
    NonFinite { what: &'static str, index: usize },

    #[error("field has {got} samples but the grid has {expected}")]
    LengthMismatch { expected: usize, got: usize },

    /// Frequency-1 content of the Helmholtz source exceeds the tolerance; the
    /// prescribed curvature does not close up.
    #[error("resonant frequency-1 content {ratio:.3e} exceeds tolerance {tol:.3e}")]
    Resonance { ratio: f64, tol: f64 },

    /// `h + h_θθ` is not strictly positive somewhere on the grid.
    #[error("local convexity lost: min(h + h_θθ) = {margin:.6e}")]
    Convexity { margin: f64 },

    #[error("curvature power v is not strictly positive (min = {min:.6e})")]
    Positivity { min: f64 },

    #[error("invalid curve or flow specification: {0}")]
    Spec(String),

    #[error("required time step {dt:.3e} is below the floor {dt_min:.3e} at t = {t}")]
    StepFloor { dt: f64, dt_min: f64, t: f64 },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
