use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the simulation modules and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("problem size must be at least {min}, got {got}")]
    InvalidSize { min: u64, got: u64 },

    #[error("linearized probability (1+4k)/N = {value} lies outside [0, 1] (N = {n}, k = {k})")]
    OutsideLinearRegime { n: u64, k: u64, value: f64 },

    #[error("analog parameters out of range: {0}")]
    InvalidAnalogParams(String),

    #[error("dense density-matrix bound exceeded: N = {n} > {max}")]
    DenseBound { n: usize, max: usize },

    #[error("marked index {index} out of range for N = {n}")]
    MarkedIndex { index: usize, n: usize },

    #[error("N = {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("scaling fit needs at least 3 usable points, got {usable} ({excluded} excluded)")]
    TooFewPoints { usable: usize, excluded: usize },

    #[error("sweep verification failed at N = {n}: {detail}")]
    Verification { n: u64, detail: String },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serialize(String),
}

pub type Result<T> = std::result::Result<T, Error>;
