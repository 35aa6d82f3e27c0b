//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the numerical layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A state (or a displaced state) carries too much probability near the
    /// truncation boundary for the requested dimension.
    #[error("truncation dimension too small in {context}: mass {mass:.3e} exceeds {limit:.3e}")]
    TruncationTooSmall {
        context: &'static str,
        mass: f64,
        limit: f64,
    },

    /// A diagonal-operator entry evaluated to NaN or infinity.
    #[error("non-finite operator value at index {index}")]
    NonFiniteValue { index: usize },

    /// Two vectors (or a vector and an operator) disagree on dimension.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// Input to an eigensolver is not Hermitian within tolerance.
    #[error("matrix not Hermitian: max asymmetry {max_asymmetry:.3e}")]
    NotHermitian { max_asymmetry: f64 },

    /// An iterative eigensolver exhausted its sweep budget.
    #[error("eigensolver did not converge after {sweeps} sweeps (residual {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    /// An eigenvalue list is not a valid probability spectrum.
    #[error("invalid spectrum: {reason}")]
    InvalidSpectrum { reason: String },

    /// An Araki-Lieb bound came out negative beyond numerical slack; this
    /// signals an implementation bug, not physics.
    #[error("Araki-Lieb {side} bound violated: margin {margin:.3e}")]
    InequalityViolated { side: &'static str, margin: f64 },

    /// A two-atom basis label outside {ee, eg, ge, gg}.
    #[error("invalid two-atom basis label {label:?} (expected ee, eg, ge or gg)")]
    InvalidLabel { label: String },

    /// Scenario configuration failed validation.
    #[error("config field {field}: {reason}")]
    InvalidConfig { field: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
