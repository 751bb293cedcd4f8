use thiserror::Error;

use crate::fockspace::ModeLayout;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The Fock cutoff cannot support the requested construction.
    #[error("fock cutoff n_max = {got} is too small (need at least {min})")]
    CutoffTooSmall { min: usize, got: usize },

    /// An operation was invoked on a mode layout it is not defined for.
    #[error("unsupported mode layout {got:?}: {reason}")]
    UnsupportedLayout {
        got: ModeLayout,
        reason: &'static str,
    },

    /// Vector or matrix dimensions do not agree.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A matrix that must be Hermitian is not, within tolerance.
    #[error("matrix not Hermitian: max |M - M^†| = {deviation:.3e} exceeds {tolerance:.1e}")]
    NonHermitian { deviation: f64, tolerance: f64 },

    /// A Hermitian expectation value came out with a non-negligible
    /// imaginary part, indicating a construction bug upstream.
    #[error("expectation value has residual imaginary part {imaginary:.3e}")]
    ResidualImaginary { imaginary: f64 },

    /// The weight left beyond the truncation cutoff exceeds the accepted
    /// bound; the cutoff must grow before the construction is trustworthy.
    #[error(
        "truncation tail {tail:.3e} beyond n = {cutoff} exceeds {bound:.1e}; increase the cutoff"
    )]
    TailTooLarge {
        tail: f64,
        cutoff: usize,
        bound: f64,
    },

    /// The doublet quantum number must be at least 1; the unpaired ground
    /// state is reachable only through the matrix Hamiltonians.
    #[error("doublet quantum number n_l must be at least 1")]
    InvalidDoubletIndex,

    /// A scalar input failed validation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
