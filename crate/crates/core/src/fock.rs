//! Truncated Fock-space numerics: states over {|0>, ..., |N-1>}, ladder and
//! number-lowering operators, and diagonal operator functions of the number
//! operator.
//!
//! Truncation policy: a physical state must keep its top [`tolerances::TAIL_WINDOW`]
//! levels below [`tolerances::TAIL_MASS`] total probability. Operators that
//! push amplitude past the boundary (creation, the phase-operator adjoint)
//! report the discarded mass instead of failing; the caller decides whether
//! the leak is acceptable.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances;

/// Complex amplitudes over the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
}

impl FockVector {
    /// Zero vector of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "Fock dimension must be at least 1");
        FockVector {
            amps: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    /// The number state |n> in dimension `dim`.
    pub fn basis(n: usize, dim: usize) -> Self {
        assert!(n < dim, "basis index {n} outside dimension {dim}");
        let mut v = FockVector::zero(dim);
        v.amps[n] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        for (index, a) in amps.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::NonFiniteValue { index });
            }
        }
        Ok(FockVector { amps })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amp(&self, n: usize) -> Complex64 {
        self.amps[n]
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability carried by the top [`tolerances::TAIL_WINDOW`] levels.
    pub fn tail_mass(&self) -> f64 {
        let start = self.dim().saturating_sub(tolerances::TAIL_WINDOW);
        self.amps[start..].iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() < tolerances::STATE_NORM
    }

    pub fn scaled(&self, s: Complex64) -> FockVector {
        FockVector {
            amps: self.amps.iter().map(|a| s * a).collect(),
        }
    }

    pub fn add(&self, other: &FockVector) -> Result<FockVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(FockVector {
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Largest |self_n - other_n| over the basis.
    pub fn max_abs_diff(&self, other: &FockVector) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Mean of the number operator, <n>.
    pub fn mean_photon_number(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a.norm_sqr())
            .sum()
    }
}

/// <u|v> with compensated (Kahan) accumulation; the branch overlaps feeding
/// the Gram matrix need absolute accuracy near 1e-15.
pub fn inner(u: &FockVector, v: &FockVector) -> Result<Complex64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for (a, b) in u.amps.iter().zip(&v.amps) {
        let term = a.conj() * b - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    Ok(sum)
}

/// Coherent-state amplitudes c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), by
/// the stable recurrence c_{n+1} = c_n * alpha / sqrt(n+1).
///
/// Fails with [`Error::TruncationTooSmall`] when `dim` leaves more than the
/// tail-mass budget on the top levels.
pub fn coherent(alpha: Complex64, dim: usize) -> Result<FockVector> {
    assert!(dim >= 1);
    let mut amps = Vec::with_capacity(dim);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..dim {
        amps.push(c);
        c *= alpha / ((n + 1) as f64).sqrt();
    }
    let v = FockVector { amps };
    let tail = v.tail_mass();
    if tail >= tolerances::TAIL_MASS {
        return Err(Error::TruncationTooSmall {
            context: "coherent",
            mass: tail,
            limit: tolerances::TAIL_MASS,
        });
    }
    Ok(v)
}

/// Smallest dimension (at least the 128 default) whose tail mass clears the
/// budget for a coherent state of this amplitude.
pub fn auto_dim(alpha: Complex64) -> usize {
    let mut dim = 128usize;
    while coherent(alpha, dim).is_err() {
        dim += 32;
    }
    dim
}

/// a |n> = sqrt(n) |n-1>. Nothing is discarded.
pub fn apply_annihilation(v: &FockVector) -> FockVector {
    let dim = v.dim();
    let mut out = FockVector::zero(dim);
    for n in 1..dim {
        out.amps[n - 1] = (n as f64).sqrt() * v.amps[n];
    }
    out
}

/// a+ |n> = sqrt(n+1) |n+1>; the amplitude pushed past the boundary is
/// returned as discarded mass.
pub fn apply_creation(v: &FockVector) -> (FockVector, f64) {
    let dim = v.dim();
    let mut out = FockVector::zero(dim);
    for n in 0..dim - 1 {
        out.amps[n + 1] = ((n + 1) as f64).sqrt() * v.amps[n];
    }
    let leaked = dim as f64 * v.amps[dim - 1].norm_sqr();
    (out, leaked)
}

/// Number-lowering phase operator V = (n+1)^{-1/2} a: V |n> = |n-1>,
/// V |0> = 0.
pub fn apply_v(v: &FockVector) -> FockVector {
    let dim = v.dim();
    let mut out = FockVector::zero(dim);
    for n in 1..dim {
        out.amps[n - 1] = v.amps[n];
    }
    out
}

/// V+ |n> = |n+1>; the top amplitude is discarded and reported.
pub fn apply_v_dagger(v: &FockVector) -> (FockVector, f64) {
    let dim = v.dim();
    let mut out = FockVector::zero(dim);
    for n in 0..dim - 1 {
        out.amps[n + 1] = v.amps[n];
    }
    let leaked = v.amps[dim - 1].norm_sqr();
    (out, leaked)
}

/// Diagonal operator f(n), applied entrywise in the number basis. Linear,
/// and commutes with every other diagonal operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOperator {
    values: Vec<Complex64>,
}

impl DiagonalOperator {
    pub fn identity(dim: usize) -> Self {
        DiagonalOperator {
            values: vec![Complex64::new(1.0, 0.0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, n: usize) -> Complex64 {
        self.values[n]
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        if self.dim() != v.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: v.dim(),
            });
        }
        Ok(FockVector {
            amps: v
                .amps
                .iter()
                .zip(&self.values)
                .map(|(a, f)| f * a)
                .collect(),
        })
    }

    /// Pointwise product with another diagonal operator.
    pub fn compose(&self, other: &DiagonalOperator) -> Result<DiagonalOperator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(DiagonalOperator {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }
}

/// Build the diagonal operator with values f(n) for n = 0..dim-1.
pub fn diag_func(dim: usize, f: impl Fn(usize) -> f64) -> Result<DiagonalOperator> {
    let mut values = Vec::with_capacity(dim);
    for n in 0..dim {
        let x = f(n);
        if !x.is_finite() {
            return Err(Error::NonFiniteValue { index: n });
        }
        values.push(Complex64::new(x, 0.0));
    }
    Ok(DiagonalOperator { values })
}
