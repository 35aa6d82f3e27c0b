//! Exact resonant Jaynes-Cummings evolution in the interaction picture for
//! both mixed-state scenarios.
//!
//! The evolution operator acts blockwise on (excited, ground) field
//! components,
//!
//! ```text
//! U(t) = | cos(lt sqrt(n+1))        -i sin(lt sqrt(n+1)) V |
//!        | -i V+ sin(lt sqrt(n+1))   cos(lt sqrt(n))        |
//! ```
//!
//! with V the number-lowering phase operator, so a time step is a handful
//! of diagonal applications and shifts: O(N) per branch, no matrix
//! exponentiation and no stepping error. Mixed initial states unravel into
//! four unnormalized branch wavefunctions whose norms and overlaps carry
//! every observable this crate reports.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{self, DiagonalOperator, FockVector};
use crate::linalg::CMatrix;
use crate::tolerances;

/// Which mixed initial condition produced a branch set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Atom pure (excited), field in a statistical mixture of |alpha>, |beta>.
    FieldMixture,
    /// Field pure (coherent |alpha>), atom in a mixture of excited/ground.
    AtomMixture,
}

/// A d-component vector of field states, one per atomic basis state
/// (d = 2 for the real atom, d = 4 for the artificial atom or two atoms).
#[derive(Debug, Clone)]
pub struct HybridState {
    components: Vec<FockVector>,
    /// Evolution parameter lambda*t accumulated by unitary applications.
    pub lambda_t: f64,
    /// Probability discarded at the truncation boundary so far.
    pub leaked_mass: f64,
}

impl HybridState {
    pub fn new(components: Vec<FockVector>) -> Result<Self> {
        assert!(!components.is_empty());
        let dim = components[0].dim();
        for c in &components {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: c.dim(),
                });
            }
        }
        Ok(HybridState {
            components,
            lambda_t: 0.0,
            leaked_mass: 0.0,
        })
    }

    /// Number of atomic levels (2 or 4 in this crate).
    pub fn levels(&self) -> usize {
        self.components.len()
    }

    /// Fock dimension shared by every component.
    pub fn field_dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn component(&self, k: usize) -> &FockVector {
        &self.components[k]
    }

    pub fn components(&self) -> &[FockVector] {
        &self.components
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(FockVector::norm_sqr).sum()
    }

    /// <self|other> summed over components.
    pub fn overlap(&self, other: &HybridState) -> Result<Complex64> {
        if self.levels() != other.levels() {
            return Err(Error::DimensionMismatch {
                left: self.levels(),
                right: other.levels(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (u, v) in self.components.iter().zip(&other.components) {
            acc += fock::inner(u, v)?;
        }
        Ok(acc)
    }

    pub fn max_abs_diff(&self, other: &HybridState) -> f64 {
        assert_eq!(self.levels(), other.levels());
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

/// The diagonal trigonometric blocks of the evolution operator at a fixed
/// value of lambda*t.
pub struct JcBlocks {
    /// cos(lt sqrt(n+1))
    pub cos_np1: DiagonalOperator,
    /// sin(lt sqrt(n+1))
    pub sin_np1: DiagonalOperator,
    /// cos(lt sqrt(n))
    pub cos_n: DiagonalOperator,
}

impl JcBlocks {
    pub fn new(lambda_t: f64, dim: usize) -> Self {
        let cos_np1 = fock::diag_func(dim, |n| (lambda_t * ((n + 1) as f64).sqrt()).cos())
            .expect("trig of finite argument");
        let sin_np1 = fock::diag_func(dim, |n| (lambda_t * ((n + 1) as f64).sqrt()).sin())
            .expect("trig of finite argument");
        let cos_n = fock::diag_func(dim, |n| (lambda_t * (n as f64).sqrt()).cos())
            .expect("trig of finite argument");
        JcBlocks {
            cos_np1,
            sin_np1,
            cos_n,
        }
    }

    /// Apply the 2x2 block to an (excited, ground) pair of field vectors.
    /// Returns the new pair and the mass lost past the truncation boundary.
    pub fn apply_pair(&self, excited: &FockVector, ground: &FockVector) -> (FockVector, FockVector, f64) {
        let minus_i = Complex64::new(0.0, -1.0);
        // excited' = cos(lt sqrt(n+1)) f_e - i sin(lt sqrt(n+1)) V f_g
        let term_e = self.cos_np1.apply(excited).expect("dims match");
        let coupled_e = self
            .sin_np1
            .apply(&fock::apply_v(ground))
            .expect("dims match")
            .scaled(minus_i);
        let new_e = term_e.add(&coupled_e).expect("dims match");
        // ground' = -i V+ sin(lt sqrt(n+1)) f_e + cos(lt sqrt(n)) f_g
        let (shifted, leaked) = fock::apply_v_dagger(&self.sin_np1.apply(excited).expect("dims match"));
        let coupled_g = shifted.scaled(minus_i);
        let term_g = self.cos_n.apply(ground).expect("dims match");
        let new_g = coupled_g.add(&term_g).expect("dims match");
        (new_e, new_g, leaked)
    }
}

/// Apply the interaction-picture evolution operator U(lambda_t) to a
/// two-level hybrid state.
pub fn evolve_jc(state: &HybridState, lambda_t: f64) -> Result<HybridState> {
    assert_eq!(state.levels(), 2, "evolve_jc acts on two-level states");
    let blocks = JcBlocks::new(lambda_t, state.field_dim());
    let (e, g, leaked) = blocks.apply_pair(state.component(0), state.component(1));
    if leaked > tolerances::LEAK_BUDGET {
        return Err(Error::TruncationTooSmall {
            context: "evolve_jc",
            mass: leaked,
            limit: tolerances::LEAK_BUDGET,
        });
    }
    Ok(HybridState {
        components: vec![e, g],
        lambda_t: state.lambda_t + lambda_t,
        leaked_mass: state.leaked_mass + leaked,
    })
}

/// The four unnormalized branch wavefunctions of one scenario at one time.
#[derive(Debug, Clone)]
pub struct BranchSet {
    branches: [FockVector; 4],
    pub scenario: Scenario,
    pub lambda_t: f64,
    pub leaked_mass: f64,
}

impl BranchSet {
    pub fn branch(&self, i: usize) -> &FockVector {
        &self.branches[i]
    }

    pub fn branches(&self) -> &[FockVector; 4] {
        &self.branches
    }

    pub fn field_dim(&self) -> usize {
        self.branches[0].dim()
    }

    /// Total probability carried by the four branches.
    pub fn total_norm_sqr(&self) -> f64 {
        self.branches.iter().map(FockVector::norm_sqr).sum()
    }

    /// Build a branch set directly from four components (used by the
    /// purified and two-atom pipelines, whose components are branches).
    pub fn from_components(
        components: [FockVector; 4],
        scenario: Scenario,
        lambda_t: f64,
        leaked_mass: f64,
    ) -> Self {
        BranchSet {
            branches: components,
            scenario,
            lambda_t,
            leaked_mass,
        }
    }
}

/// Branches for the field-mixture scenario: atom starts excited, field in
/// C |alpha><alpha| + (1-C) |beta><beta|.
///
/// psi_1 = sqrt(C)   cos(lt sqrt(n+1)) |alpha>
/// psi_2 = -i sqrt(C)   V+ sin(lt sqrt(n+1)) |alpha>
/// psi_3 = sqrt(1-C) cos(lt sqrt(n+1)) |beta>
/// psi_4 = -i sqrt(1-C) V+ sin(lt sqrt(n+1)) |beta>
pub fn branches_field_mixture(
    c: f64,
    alpha: Complex64,
    beta: Complex64,
    lambda_t: f64,
    dim: usize,
) -> Result<BranchSet> {
    check_weight(c)?;
    let alpha_vec = fock::coherent(alpha, dim)?;
    let beta_vec = fock::coherent(beta, dim)?;
    let blocks = JcBlocks::new(lambda_t, dim);
    let minus_i = Complex64::new(0.0, -1.0);
    let w_a = Complex64::new(c.sqrt(), 0.0);
    let w_b = Complex64::new((1.0 - c).sqrt(), 0.0);

    let psi1 = blocks.cos_np1.apply(&alpha_vec)?.scaled(w_a);
    let (up_a, leak_a) = fock::apply_v_dagger(&blocks.sin_np1.apply(&alpha_vec)?);
    let psi2 = up_a.scaled(minus_i * w_a);
    let psi3 = blocks.cos_np1.apply(&beta_vec)?.scaled(w_b);
    let (up_b, leak_b) = fock::apply_v_dagger(&blocks.sin_np1.apply(&beta_vec)?);
    let psi4 = up_b.scaled(minus_i * w_b);

    let leaked = c * leak_a + (1.0 - c) * leak_b;
    finish_branches([psi1, psi2, psi3, psi4], Scenario::FieldMixture, lambda_t, leaked)
}

/// Branches for the atom-mixture scenario: field starts coherent |alpha>,
/// atom in C |e><e| + (1-C) |g><g|.
///
/// The ground-state branch pair differs from the field-mixture case:
///
/// Psi_3 = -i sqrt(1-C) sin(lt sqrt(n+1)) V |alpha>   (V acts first)
/// Psi_4 =    sqrt(1-C) cos(lt sqrt(n)) |alpha>       (argument sqrt(n))
pub fn branches_atom_mixture(
    c: f64,
    alpha: Complex64,
    lambda_t: f64,
    dim: usize,
) -> Result<BranchSet> {
    check_weight(c)?;
    let alpha_vec = fock::coherent(alpha, dim)?;
    let blocks = JcBlocks::new(lambda_t, dim);
    let minus_i = Complex64::new(0.0, -1.0);
    let w_e = Complex64::new(c.sqrt(), 0.0);
    let w_g = Complex64::new((1.0 - c).sqrt(), 0.0);

    let psi1 = blocks.cos_np1.apply(&alpha_vec)?.scaled(w_e);
    let (up, leak) = fock::apply_v_dagger(&blocks.sin_np1.apply(&alpha_vec)?);
    let psi2 = up.scaled(minus_i * w_e);
    let psi3 = blocks
        .sin_np1
        .apply(&fock::apply_v(&alpha_vec))?
        .scaled(minus_i * w_g);
    let psi4 = blocks.cos_n.apply(&alpha_vec)?.scaled(w_g);

    let leaked = c * leak;
    finish_branches([psi1, psi2, psi3, psi4], Scenario::AtomMixture, lambda_t, leaked)
}

fn check_weight(c: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::InvalidConfig {
            field: "C",
            reason: format!("weight {c} outside [0, 1]"),
        });
    }
    Ok(())
}

fn finish_branches(
    branches: [FockVector; 4],
    scenario: Scenario,
    lambda_t: f64,
    leaked: f64,
) -> Result<BranchSet> {
    if leaked > tolerances::LEAK_BUDGET {
        return Err(Error::TruncationTooSmall {
            context: "branch construction",
            mass: leaked,
            limit: tolerances::LEAK_BUDGET,
        });
    }
    Ok(BranchSet {
        branches,
        scenario,
        lambda_t,
        leaked_mass: leaked,
    })
}

/// Small dense Hermitian matrix (2x2 reduced atom, 4x4 Gram matrix).
#[derive(Debug, Clone)]
pub struct SmallHermitian {
    mat: CMatrix,
}

impl SmallHermitian {
    /// Wrap a matrix, enforcing Hermiticity within tolerance.
    pub fn from_matrix(mat: CMatrix) -> Result<Self> {
        let defect = mat.hermitian_defect();
        if defect > tolerances::HERMITICITY {
            return Err(Error::NotHermitian {
                max_asymmetry: defect,
            });
        }
        Ok(SmallHermitian { mat })
    }

    pub(crate) fn from_exact(mat: CMatrix) -> Self {
        debug_assert!(mat.hermitian_defect() <= tolerances::HERMITICITY);
        SmallHermitian { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat.get(i, j)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// Tr(rho^2) = sum |entries|^2 for Hermitian input.
    pub fn purity(&self) -> f64 {
        let f = self.mat.frobenius_norm();
        f * f
    }
}

/// Reduced atomic density matrix from branch overlaps:
///
/// rho_A = | <1|1>+<3|3>   (<1|2>+<3|4>)* |
///         | <1|2>+<3|4>    <2|2>+<4|4>   |
pub fn reduced_atom(b: &BranchSet) -> SmallHermitian {
    let p_ee = b.branch(0).norm_sqr() + b.branch(2).norm_sqr();
    let p_gg = b.branch(1).norm_sqr() + b.branch(3).norm_sqr();
    let coh = fock::inner(b.branch(0), b.branch(1)).expect("equal dims")
        + fock::inner(b.branch(2), b.branch(3)).expect("equal dims");
    let mut m = CMatrix::zeros(2);
    m.set(0, 0, Complex64::new(p_ee, 0.0));
    m.set(1, 1, Complex64::new(p_gg, 0.0));
    m.set(1, 0, coh);
    m.set(0, 1, coh.conj());
    SmallHermitian::from_exact(m)
}

/// N x N field density matrix; rank <= 4 by construction.
#[derive(Debug, Clone)]
pub struct FieldDensityMatrix {
    mat: CMatrix,
}

impl FieldDensityMatrix {
    pub fn from_matrix(mat: CMatrix) -> Self {
        FieldDensityMatrix { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// Photon-number distribution P_n (the diagonal).
    pub fn diagonal_probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|n| self.mat.get(n, n).re).collect()
    }

    /// Tr(rho^2).
    pub fn purity(&self) -> f64 {
        let f = self.mat.frobenius_norm();
        f * f
    }
}

/// rho_F = sum_i |psi_i><psi_i| over the four branches.
pub fn field_density(b: &BranchSet) -> FieldDensityMatrix {
    let dim = b.field_dim();
    let mut mat = CMatrix::zeros(dim);
    for branch in b.branches() {
        mat.add_outer_product(branch.amps(), 1.0);
    }
    FieldDensityMatrix { mat }
}

/// The full (2N x 2N) atom+field density matrix in block form,
///
/// rho = | |1><1|+|3><3|   |1><2|+|3><4| |
///       | |2><1|+|4><3|   |2><2|+|4><4| |
///
/// Materialized only for the composite-entropy oracle; the production
/// entropy path never forms it.
pub fn full_density_2level(b: &BranchSet) -> CMatrix {
    let n = b.field_dim();
    let mut full = CMatrix::zeros(2 * n);
    // pairs of branches living in the (excited, ground) rows
    for (e_idx, g_idx) in [(0usize, 1usize), (2, 3)] {
        let e = b.branch(e_idx).amps();
        let g = b.branch(g_idx).amps();
        for i in 0..n {
            for j in 0..n {
                let ee = e[i] * e[j].conj();
                let eg = e[i] * g[j].conj();
                let ge = g[i] * e[j].conj();
                let gg = g[i] * g[j].conj();
                let cur = full.get(i, j);
                full.set(i, j, cur + ee);
                let cur = full.get(i, n + j);
                full.set(i, n + j, cur + eg);
                let cur = full.get(n + i, j);
                full.set(n + i, j, cur + ge);
                let cur = full.get(n + i, n + j);
                full.set(n + i, n + j, cur + gg);
            }
        }
    }
    full
}
