use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("number of modes must be at least 1")]
    NoModes,

    #[error("matrix of shape {rows}x{cols} is not a 2N x 2N phase-space matrix")]
    BadShape { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected} modes, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("mode {mode} out of range for a {n_modes}-mode system")]
    ModeOutOfRange { mode: usize, n_modes: usize },

    #[error("mode indices must be strictly increasing and distinct")]
    UnorderedModes,

    #[error("mode set is empty")]
    EmptyModeSet,

    #[error("a two-mode operation needs two distinct modes (got {0} twice)")]
    SameMode(usize),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not symplectic (max deviation {0:e})")]
    NotSymplectic(f64),

    #[error("matrix is not positive definite (min eigenvalue {0:e})")]
    NotPositiveDefinite(f64),

    #[error("symplectic spectrum could not be paired (gap {0:e})")]
    Pairing(f64),

    #[error("invalid bipartition: {0}")]
    InvalidPartition(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("parameter `{name}` = {value} is outside its domain ({domain})")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("global state is not pure (max |eta - 1| = {0:e})")]
    NotPure(f64),

    #[error("m = {0} lies below the separable bound 1")]
    BelowSeparable(f64),

    #[error("entropy argument {0} is below 1")]
    EntropyDomain(f64),

    #[error("{0}")]
    Unsupported(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn nonneg(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            domain: ">= 0",
        })
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            domain: "> 0",
        })
    }
}
