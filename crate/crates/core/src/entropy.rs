//! von Neumann entropies and the Araki-Lieb audit.
//!
//! The production path never diagonalizes anything larger than 4x4: the
//! field entropy comes from the Gram matrix of the four branch
//! wavefunctions, whose nonzero spectrum equals that of the N x N field
//! density matrix. The brute-force routes (dense field diagonalization,
//! full composite diagonalization) live here as oracles so the shortcut is
//! checked, not trusted.

use num_complex::Complex64;

use crate::dynamics::{self, BranchSet, FieldDensityMatrix, Scenario, SmallHermitian};
use crate::error::{Error, Result};
use crate::linalg;
use crate::purification;
use crate::tolerances;

/// Entropies (nats) of one scenario at one time.
#[derive(Debug, Clone)]
pub struct EntropyRecord {
    /// Time in units of 1/lambda.
    pub t: f64,
    /// Reduced atomic entropy S_A.
    pub s_atom: f64,
    /// Field entropy S_F (computed through the Gram route).
    pub s_field: f64,
    /// Artificial-atom entropy S_AA; equals S_F because the purified
    /// composite is pure.
    pub s_artificial: f64,
    /// Composite atom+field entropy S_AF when an oracle evaluated it.
    pub s_composite: Option<f64>,
    /// |S_A - S_F|, the Araki-Lieb lower bound on S_AF.
    pub araki_lower: f64,
    /// S_A + S_F, the Araki-Lieb upper bound on S_AF.
    pub araki_upper: f64,
}

/// Eigenvalues of a small Hermitian matrix, descending. Dimension 2 uses
/// the closed trace/determinant form, anything larger the cyclic complex
/// Jacobi sweep.
pub fn eigvals_hermitian(m: &SmallHermitian) -> Result<Vec<f64>> {
    linalg::hermitian_eigenvalues(m.matrix())
}

/// Shannon functional S = -sum p ln p over an eigenvalue list.
///
/// Eigenvalues in [-1e-10, 0) are clamped to zero (roundoff); anything
/// more negative, or a sum far from one, is rejected as an invalid
/// spectrum rather than silently absorbed.
pub fn von_neumann(eigs: &[f64]) -> Result<f64> {
    let sum: f64 = eigs.iter().sum();
    if (sum - 1.0).abs() > tolerances::SPECTRUM_SUM {
        return Err(Error::InvalidSpectrum {
            reason: format!("eigenvalues sum to {sum}, expected 1"),
        });
    }
    let mut s = 0.0;
    for &p in eigs {
        if p < -tolerances::EIG_CLAMP {
            return Err(Error::InvalidSpectrum {
                reason: format!("negative eigenvalue {p}"),
            });
        }
        if p > 0.0 {
            s -= p * p.ln();
        }
    }
    Ok(s)
}

/// S_A, S_F and the Araki-Lieb bounds for one branch set. S_F is the
/// artificial-atom entropy from the 4x4 Gram spectrum.
pub fn entropies_at(b: &BranchSet) -> Result<EntropyRecord> {
    let atom_eigs = eigvals_hermitian(&dynamics::reduced_atom(b))?;
    let s_atom = von_neumann(&atom_eigs)?;
    let gram_eigs = eigvals_hermitian(&purification::gram_matrix(b))?;
    let s_artificial = von_neumann(&gram_eigs)?;
    let s_field = s_artificial;
    Ok(EntropyRecord {
        t: b.lambda_t,
        s_atom,
        s_field,
        s_artificial,
        s_composite: None,
        araki_lower: (s_atom - s_field).abs(),
        araki_upper: s_atom + s_field,
    })
}

/// Margins by which a record satisfies |S_A - S_F| <= S_AF <= S_A + S_F.
#[derive(Debug, Clone, Copy)]
pub struct ArakiMargins {
    /// S_AF - |S_A - S_F|; nonnegative when the lower bound holds.
    pub lower: f64,
    /// (S_A + S_F) - S_AF; nonnegative when the upper bound holds.
    pub upper: f64,
}

/// Check both Araki-Lieb bounds for a record against a composite entropy.
/// A margin below the numerical slack signals an implementation bug.
pub fn araki_lieb_check(rec: &EntropyRecord, s_composite: f64) -> Result<ArakiMargins> {
    let margins = ArakiMargins {
        lower: s_composite - rec.araki_lower,
        upper: rec.araki_upper - s_composite,
    };
    if margins.lower < -tolerances::ARAKI_SLACK {
        return Err(Error::InequalityViolated {
            side: "lower",
            margin: margins.lower,
        });
    }
    if margins.upper < -tolerances::ARAKI_SLACK {
        return Err(Error::InequalityViolated {
            side: "upper",
            margin: margins.upper,
        });
    }
    Ok(margins)
}

/// Brute-force field entropy: dense Hermitian eigendecomposition of the
/// full N x N density matrix (Householder + QL route, independent of the
/// Jacobi path used by the Gram shortcut).
pub fn oracle_field_entropy(rho: &FieldDensityMatrix) -> Result<f64> {
    let eigs = linalg::hermitian_eigenvalues_tridiagonal(rho.matrix())?;
    von_neumann(&eigs)
}

/// Brute-force composite entropy: diagonalize the full 2N x 2N evolved
/// density matrix. Constant in time by unitarity; used as a spot check.
pub fn oracle_composite_entropy(b: &BranchSet) -> Result<f64> {
    let full = dynamics::full_density_2level(b);
    let eigs = linalg::hermitian_eigenvalues_tridiagonal(&full)?;
    von_neumann(&eigs)
}

/// Spectrum {p+, p-} of a two-component mixture
/// c |a><a| + (1-c) |b><b| with overlap kappa = <a|b>.
pub fn two_state_mixture_spectrum(c: f64, kappa_sqr: f64) -> [f64; 2] {
    let disc = (0.25 - c * (1.0 - c) * (1.0 - kappa_sqr)).max(0.0).sqrt();
    [0.5 + disc, 0.5 - disc]
}

/// Analytic composite entropy S_AF at t = 0 (hence at every time) for the
/// field-mixture scenario.
pub fn composite_entropy_field_mixture(c: f64, alpha: Complex64, beta: Complex64) -> f64 {
    let overlap =
        (-0.5 * (alpha.norm_sqr() + beta.norm_sqr()) + alpha.conj() * beta).exp();
    let spectrum = two_state_mixture_spectrum(c, overlap.norm_sqr());
    von_neumann(&spectrum).expect("valid two-point spectrum")
}

/// Analytic composite entropy S_AF for the atom-mixture scenario:
/// the binary entropy of the atomic weights.
pub fn composite_entropy_atom_mixture(c: f64) -> f64 {
    von_neumann(&[c, 1.0 - c]).expect("valid two-point spectrum")
}

/// Analytic S_AF for a scenario (constant in time by unitarity).
pub fn composite_entropy_analytic(
    scenario: Scenario,
    c: f64,
    alpha: Complex64,
    beta: Complex64,
) -> f64 {
    match scenario {
        Scenario::FieldMixture => composite_entropy_field_mixture(c, alpha, beta),
        Scenario::AtomMixture => composite_entropy_atom_mixture(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{branches_atom_mixture, branches_field_mixture, field_density};
    use crate::fock;
    use crate::linalg::CMatrix;

    const LN2: f64 = std::f64::consts::LN_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn von_neumann_reference_points() {
        assert_eq!(von_neumann(&[1.0, 0.0]).unwrap(), 0.0);
        assert!((von_neumann(&[0.5, 0.5]).unwrap() - LN2).abs() < 1e-15);
        assert!((von_neumann(&[0.25; 4]).unwrap() - 2.0 * LN2).abs() < 1e-15);
        // clamped roundoff zeros are fine, worse is not
        assert!(von_neumann(&[1.0, -5e-11, 5e-11]).is_ok());
        assert!(matches!(
            von_neumann(&[1.0, -1e-9, 1e-9]),
            Err(Error::InvalidSpectrum { .. })
        ));
        assert!(matches!(
            von_neumann(&[0.7, 0.2]),
            Err(Error::InvalidSpectrum { .. })
        ));
    }

    #[test]
    fn eigvals_small_matrices() {
        let mut m = CMatrix::zeros(2);
        m.set(0, 0, c(0.5, 0.0));
        m.set(1, 1, c(0.5, 0.0));
        let sh = SmallHermitian::from_matrix(m).unwrap();
        assert_eq!(eigvals_hermitian(&sh).unwrap(), vec![0.5, 0.5]);

        let mut m = CMatrix::zeros(2);
        m.set(0, 0, c(0.5, 0.0));
        m.set(0, 1, c(0.5, 0.0));
        m.set(1, 0, c(0.5, 0.0));
        m.set(1, 1, c(0.5, 0.0));
        let sh = SmallHermitian::from_matrix(m).unwrap();
        let eigs = eigvals_hermitian(&sh).unwrap();
        assert!((eigs[0] - 1.0).abs() < 1e-14 && eigs[1].abs() < 1e-14);
    }

    #[test]
    fn initial_entropies_field_mixture() {
        let b = branches_field_mixture(0.5, c(4.0, 0.0), c(-4.0, 0.0), 0.0, 128).unwrap();
        let rec = entropies_at(&b).unwrap();
        assert!((rec.s_field - LN2).abs() < 1e-10);
        assert!(rec.s_atom.abs() < 1e-10);
    }

    #[test]
    fn initial_entropies_atom_mixture() {
        let b = branches_atom_mixture(0.5, c(4.0, 0.0), 0.0, 128).unwrap();
        let rec = entropies_at(&b).unwrap();
        assert!((rec.s_atom - LN2).abs() < 1e-12);
        assert!(rec.s_field.abs() < 1e-8);
    }

    #[test]
    fn field_entropy_respects_rank_bound() {
        for &lt in &[0.7, 5.0, 12.54, 19.3] {
            let b = branches_atom_mixture(0.5, c(4.0, 0.0), lt, 128).unwrap();
            let rec = entropies_at(&b).unwrap();
            assert!(rec.s_field <= 2.0 * LN2 + 1e-10);
            assert!(rec.s_atom <= LN2 + 1e-10);
            assert!(rec.s_field >= -1e-10);
        }
    }

    #[test]
    fn gram_route_matches_dense_oracle() {
        for &lt in &[0.5, 3.3, 12.54] {
            let b = branches_field_mixture(0.5, c(4.0, 0.0), c(-4.0, 0.0), lt, 128).unwrap();
            let shortcut = entropies_at(&b).unwrap().s_field;
            let oracle = oracle_field_entropy(&field_density(&b)).unwrap();
            assert!(
                (shortcut - oracle).abs() < tolerances::GRAM_VS_ORACLE,
                "lt={lt}: {shortcut} vs {oracle}"
            );
        }
    }

    #[test]
    fn oracle_on_simple_states() {
        // pure vacuum
        let vac = fock::coherent(c(0.0, 0.0), 32).unwrap();
        let mut m = CMatrix::zeros(32);
        m.add_outer_product(vac.amps(), 1.0);
        let s = oracle_field_entropy(&FieldDensityMatrix::from_matrix(m)).unwrap();
        assert!(s.abs() < 1e-12);

        // balanced near-orthogonal mixture
        let a = fock::coherent(c(4.0, 0.0), 128).unwrap();
        let b = fock::coherent(c(-4.0, 0.0), 128).unwrap();
        let mut m = CMatrix::zeros(128);
        m.add_outer_product(a.amps(), 0.5);
        m.add_outer_product(b.amps(), 0.5);
        let s = oracle_field_entropy(&FieldDensityMatrix::from_matrix(m)).unwrap();
        assert!((s - LN2).abs() < 1e-10);
    }

    #[test]
    fn araki_lieb_margins() {
        let rec = EntropyRecord {
            t: 0.0,
            s_atom: 0.3,
            s_field: 0.5,
            s_artificial: 0.5,
            s_composite: None,
            araki_lower: 0.2,
            araki_upper: 0.8,
        };
        let m = araki_lieb_check(&rec, 0.6).unwrap();
        assert!((m.lower - 0.4).abs() < 1e-15);
        assert!((m.upper - 0.2).abs() < 1e-15);
        assert!(matches!(
            araki_lieb_check(&rec, 0.1),
            Err(Error::InequalityViolated { side: "lower", .. })
        ));
        assert!(matches!(
            araki_lieb_check(&rec, 0.9),
            Err(Error::InequalityViolated { side: "upper", .. })
        ));
    }

    #[test]
    fn purified_composite_forces_equal_entropies() {
        // S_AF = 0 for the purified system, so S_AA must equal S_F
        for &lt in &[1.0, 8.8] {
            let b = branches_field_mixture(0.5, c(4.0, 0.0), c(-4.0, 0.0), lt, 128).unwrap();
            let rec = entropies_at(&b).unwrap();
            let oracle = oracle_field_entropy(&field_density(&b)).unwrap();
            assert!((rec.s_artificial - oracle).abs() < tolerances::ARAKI_SLACK);
        }
    }

    #[test]
    fn pure_initial_state_pins_equal_subsystem_entropies() {
        // C = 1: composite pure at all times, so S_A = S_F
        for &lt in &[0.9, 4.2, 16.0] {
            let b = branches_field_mixture(1.0, c(4.0, 0.0), c(0.0, 0.0), lt, 128).unwrap();
            let rec = entropies_at(&b).unwrap();
            assert!((rec.s_atom - rec.s_field).abs() < tolerances::ARAKI_SLACK);
            araki_lieb_check(&rec, 0.0).unwrap();
        }
    }

    #[test]
    fn composite_entropy_constant_and_analytic() {
        let analytic = composite_entropy_field_mixture(0.5, c(4.0, 0.0), c(-4.0, 0.0));
        assert!((analytic - LN2).abs() < 1e-12);
        for &lt in &[0.0, 2.7] {
            let b = branches_field_mixture(0.5, c(4.0, 0.0), c(-4.0, 0.0), lt, 96).unwrap();
            let oracle = oracle_composite_entropy(&b).unwrap();
            assert!((oracle - analytic).abs() < tolerances::ARAKI_SLACK, "lt={lt}");
        }
        assert!((composite_entropy_atom_mixture(0.5) - LN2).abs() < 1e-15);
    }

    #[test]
    fn entropy_grows_off_zero_in_field_mixture() {
        let b = branches_field_mixture(0.5, c(4.0, 0.0), c(-4.0, 0.0), 0.05, 128).unwrap();
        let rec = entropies_at(&b).unwrap();
        assert!(rec.s_atom > 0.0);
    }

    #[test]
    fn entropy_unitary_invariance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        // random Hermitian generator -> random unitary via expm(iH)
        for trial in 0..10 {
            let b = branches_field_mixture(0.5, c(4.0, 0.0), c(-4.0, 0.0), 1.7, 128).unwrap();
            let g = purification::gram_matrix(&b);
            let mut h = CMatrix::zeros(4);
            for i in 0..4 {
                h.set(i, i, c(rng.gen_range(-1.0..1.0), 0.0));
                for j in (i + 1)..4 {
                    let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    h.set(i, j, z);
                    h.set(j, i, z.conj());
                }
            }
            let mut ih = CMatrix::zeros(4);
            for i in 0..4 {
                for j in 0..4 {
                    ih.set(i, j, c(0.0, 1.0) * h.get(i, j));
                }
            }
            let u = linalg::expm(&ih).unwrap();
            // conjugate: U g U+
            let mut udag = CMatrix::zeros(4);
            for i in 0..4 {
                for j in 0..4 {
                    udag.set(i, j, u.get(j, i).conj());
                }
            }
            let rotated = u.mul(g.matrix()).mul(&udag);
            let rotated = SmallHermitian::from_matrix(rotated).unwrap();
            let s0 = von_neumann(&eigvals_hermitian(&g).unwrap()).unwrap();
            let s1 = von_neumann(&eigvals_hermitian(&rotated).unwrap()).unwrap();
            assert!((s0 - s1).abs() < 1e-10, "trial {trial}: {s0} vs {s1}");
        }
    }

    #[test]
    fn gram_purity_detects_pure_states() {
        // S_AA = 0 iff Tr(rho_AA^2) = 1
        let b = branches_atom_mixture(0.5, c(4.0, 0.0), 0.0, 128).unwrap();
        let rec = entropies_at(&b).unwrap();
        let purity = purification::gram_matrix(&b).purity();
        assert!(rec.s_field.abs() < 1e-8 && (purity - 1.0).abs() < 1e-10);

        let b = branches_atom_mixture(0.5, c(4.0, 0.0), 2.0, 128).unwrap();
        let rec = entropies_at(&b).unwrap();
        let purity = purification::gram_matrix(&b).purity();
        assert!(rec.s_field > 1e-3 && purity < 1.0 - 1e-3);
    }
}
