//! Error type shared by every module of the crate.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::nlft::ConventionDescriptor;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// All failure modes of the library.
///
/// Construction-time validation errors (`InvalidArgument`, `NotTraceless`,
/// `NotUnimodular`, `NotHermitian`) indicate misuse; the remaining variants
/// are genuine domain failures (poles, degenerate channels, failed
/// calibration) that callers may want to handle.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Malformed input: wrong lengths, out-of-range indices, non-finite data.
    InvalidArgument(String),
    /// A matrix expected to be traceless has |trace| above tolerance.
    NotTraceless { trace_abs: f64 },
    /// A matrix expected to have unit determinant is too far from it.
    NotUnimodular { det_distance: f64 },
    /// A matrix expected to be Hermitian has conjugation residual above tolerance.
    NotHermitian { residual: f64 },
    /// A matrix expected to be invertible is numerically singular.
    SingularMatrix { det_abs: f64 },
    /// A density-matrix input has an eigenvalue below the PSD tolerance.
    NotPositive { min_eigenvalue: f64 },
    /// A parameter sits on (or too close to) a pole of the defining map.
    DegenerateParameter(String),
    /// A phase angle maps to an infinite coefficient (tan pole).
    PhasePole { psi: f64 },
    /// The channel normalization trace vanished; the outcome has probability ~ 0.
    DegenerateChannel { trace: f64 },
    /// Dense-matrix construction beyond the supported size.
    ResourceLimit(String),
    /// A quantity that must be real carries a complex residue above tolerance.
    InternalConsistency(String),
    /// No convention candidate (or more than one) matched within tolerance.
    CalibrationFailed {
        table: Vec<(ConventionDescriptor, f64)>,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NotTraceless { trace_abs } => {
                write!(f, "matrix is not traceless (|trace| = {trace_abs:.3e})")
            }
            Error::NotUnimodular { det_distance } => {
                write!(
                    f,
                    "matrix is not unimodular (|det - 1| = {det_distance:.3e})"
                )
            }
            Error::NotHermitian { residual } => {
                write!(f, "matrix is not Hermitian (residual = {residual:.3e})")
            }
            Error::SingularMatrix { det_abs } => {
                write!(f, "matrix is numerically singular (|det| = {det_abs:.3e})")
            }
            Error::NotPositive { min_eigenvalue } => write!(
                f,
                "matrix is not positive semidefinite (min eigenvalue = {min_eigenvalue:.3e})"
            ),
            Error::DegenerateParameter(msg) => write!(f, "degenerate parameter: {msg}"),
            Error::PhasePole { psi } => write!(
                f,
                "phase angle {psi} is within tolerance of a tan pole (odd multiple of pi/2)"
            ),
            Error::DegenerateChannel { trace } => write!(
                f,
                "channel normalization trace {trace:.3e} is compatible with zero; \
                 the post-selected outcome has vanishing probability"
            ),
            Error::ResourceLimit(msg) => write!(f, "resource limit: {msg}"),
            Error::InternalConsistency(msg) => write!(f, "internal consistency: {msg}"),
            Error::CalibrationFailed { table } => {
                write!(
                    f,
                    "calibration failed: no unique convention matched ({} candidates tested)",
                    table.len()
                )
            }
        }
    }
}

impl core::error::Error for Error {}
