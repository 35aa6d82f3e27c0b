//! Physical realization of the purification: one Jaynes-Cummings atom
//! inside the cavity plus a spectator atom outside it.
//!
//! Only atom 1 couples to the field; atom 2 contributes no interaction
//! term, so the evolution acts with the 2x2 JC blocks on atom 1 within
//! each fixed atom-2 sector. Under the identification ee -> A1, ge -> A2,
//! eg -> A3, gg -> A4 this is the artificial four-level evolution, and the
//! entangled initial states below evolve into exactly the purified
//! wavefunctions of the two mixed-state scenarios.

use num_complex::Complex64;

use crate::dynamics::{BranchSet, HybridState, JcBlocks, Scenario};
use crate::error::{Error, Result};
use crate::fock::{self, FockVector};
use crate::purification;
use crate::tolerances;

/// Two-atom + field state with components ordered (e1e2, g1e2, e1g2, g1g2),
/// i.e. the artificial-atom ordering under the basis identification.
#[derive(Debug, Clone)]
pub struct TwoAtomState {
    state: HybridState,
}

impl TwoAtomState {
    pub fn from_hybrid(state: HybridState) -> Self {
        assert_eq!(state.levels(), 4);
        TwoAtomState { state }
    }

    pub fn hybrid(&self) -> &HybridState {
        &self.state
    }

    pub fn component(&self, k: usize) -> &FockVector {
        self.state.component(k)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.state.norm_sqr()
    }

    /// (P(e2), P(g2)): the spectator populations.
    pub fn spectator_probabilities(&self) -> (f64, f64) {
        let e2 = self.component(0).norm_sqr() + self.component(1).norm_sqr();
        let g2 = self.component(2).norm_sqr() + self.component(3).norm_sqr();
        (e2, g2)
    }

    /// Inversion of the cavity atom, P(e1) - P(g1).
    pub fn cavity_atom_inversion(&self) -> f64 {
        let e1 = self.component(0).norm_sqr() + self.component(2).norm_sqr();
        let g1 = self.component(1).norm_sqr() + self.component(3).norm_sqr();
        e1 - g1
    }
}

/// Atom-atom entangled start with a coherent field,
/// sqrt(C) |alpha>|e1 e2> + sqrt(1-C) |alpha>|g1 g2>; the paper's equal
/// Bell pairing is the C = 1/2 case, arbitrary weights realize any
/// atom-mixture weight.
pub fn initial_bell_atom_pair_weighted(
    alpha: Complex64,
    c: f64,
    dim: usize,
) -> Result<TwoAtomState> {
    let field = fock::coherent(alpha, dim)?;
    let state = HybridState::new(vec![
        field.scaled(Complex64::new(c.sqrt(), 0.0)),
        FockVector::zero(dim),
        FockVector::zero(dim),
        field.scaled(Complex64::new((1.0 - c).sqrt(), 0.0)),
    ])?;
    Ok(TwoAtomState { state })
}

/// (1/sqrt(2)) |alpha> (|e1 e2> + |g1 g2>).
pub fn initial_bell_atom_pair(alpha: Complex64, dim: usize) -> Result<TwoAtomState> {
    initial_bell_atom_pair_weighted(alpha, 0.5, dim)
}

/// Atom 2 entangled with the field while atom 1 starts excited,
/// |e1> (sqrt(C) |alpha>|e2> + sqrt(1-C) |-alpha>|g2>).
pub fn initial_atom_field_entangled_weighted(
    alpha: Complex64,
    c: f64,
    dim: usize,
) -> Result<TwoAtomState> {
    let plus = fock::coherent(alpha, dim)?;
    let minus = fock::coherent(-alpha, dim)?;
    let state = HybridState::new(vec![
        plus.scaled(Complex64::new(c.sqrt(), 0.0)),
        FockVector::zero(dim),
        minus.scaled(Complex64::new((1.0 - c).sqrt(), 0.0)),
        FockVector::zero(dim),
    ])?;
    Ok(TwoAtomState { state })
}

/// (1/sqrt(2)) |e1> (|alpha>|e2> + |-alpha>|g2>).
pub fn initial_atom_field_entangled(alpha: Complex64, dim: usize) -> Result<TwoAtomState> {
    initial_atom_field_entangled_weighted(alpha, 0.5, dim)
}

/// Evolve under the two-atom interaction Hamiltonian: the JC blocks act on
/// atom 1 inside each atom-2 sector (e2: components 0 and 1; g2:
/// components 2 and 3). Atom 2 is never touched.
pub fn evolve_two_atom(state: &TwoAtomState, lambda_t: f64) -> Result<TwoAtomState> {
    let blocks = JcBlocks::new(lambda_t, state.hybrid().field_dim());
    let (ee, ge, leak_e2) = blocks.apply_pair(state.component(0), state.component(1));
    let (eg, gg, leak_g2) = blocks.apply_pair(state.component(2), state.component(3));
    let leaked = leak_e2 + leak_g2;
    if leaked > tolerances::LEAK_BUDGET {
        return Err(Error::TruncationTooSmall {
            context: "evolve_two_atom",
            mass: leaked,
            limit: tolerances::LEAK_BUDGET,
        });
    }
    let mut out = HybridState::new(vec![ee, ge, eg, gg])?;
    out.lambda_t = state.state.lambda_t + lambda_t;
    out.leaked_mass = state.state.leaked_mass + leaked;
    Ok(TwoAtomState { state: out })
}

/// Fidelity |<purified(t)|two-atom(t)>| at each grid time, for the
/// two-atom construction mimicking `scenario` with weight `c` (the paper's
/// claim is the C = 1/2 case; the weighted initial states extend it).
pub fn equivalence_report(
    scenario: Scenario,
    alpha: Complex64,
    c: f64,
    lambda_ts: &[f64],
    dim: usize,
) -> Result<Vec<f64>> {
    let initial = match scenario {
        Scenario::AtomMixture => initial_bell_atom_pair_weighted(alpha, c, dim)?,
        Scenario::FieldMixture => initial_atom_field_entangled_weighted(alpha, c, dim)?,
    };
    let mut fidelities = Vec::with_capacity(lambda_ts.len());
    for &lt in lambda_ts {
        let two_atom = evolve_two_atom(&initial, lt)?;
        let branches = branch_set_for(scenario, alpha, c, lt, dim)?;
        let purified = purification::purify(&branches);
        let fidelity = purified.overlap(two_atom.hybrid())?.norm();
        fidelities.push(fidelity);
    }
    Ok(fidelities)
}

fn branch_set_for(
    scenario: Scenario,
    alpha: Complex64,
    c: f64,
    lambda_t: f64,
    dim: usize,
) -> Result<BranchSet> {
    match scenario {
        Scenario::AtomMixture => crate::dynamics::branches_atom_mixture(c, alpha, lambda_t, dim),
        Scenario::FieldMixture => {
            crate::dynamics::branches_field_mixture(c, alpha, -alpha, lambda_t, dim)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::purification::{basis_map_two_atom, TwoAtomLabel};

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn initial_states_have_the_printed_components() {
        let s = initial_bell_atom_pair(c64(4.0, 0.0), 128).unwrap();
        let alpha = fock::coherent(c64(4.0, 0.0), 128).unwrap();
        let w = c64(0.5f64.sqrt(), 0.0);
        assert!(s.component(0).max_abs_diff(&alpha.scaled(w)) < 1e-15);
        assert_eq!(s.component(1).norm_sqr(), 0.0);
        assert_eq!(s.component(2).norm_sqr(), 0.0);
        assert!(s.component(3).max_abs_diff(&alpha.scaled(w)) < 1e-15);
        assert!((s.norm_sqr() - 1.0).abs() < tolerances::STATE_NORM);

        let s = initial_atom_field_entangled(c64(4.0, 0.0), 128).unwrap();
        let minus = fock::coherent(c64(-4.0, 0.0), 128).unwrap();
        assert!(s.component(0).max_abs_diff(&alpha.scaled(w)) < 1e-15);
        assert_eq!(s.component(1).norm_sqr(), 0.0);
        assert!(s.component(2).max_abs_diff(&minus.scaled(w)) < 1e-15);
        assert_eq!(s.component(3).norm_sqr(), 0.0);
        assert!((s.norm_sqr() - 1.0).abs() < tolerances::STATE_NORM);
    }

    #[test]
    fn initial_states_equal_purified_initials() {
        let bell = initial_bell_atom_pair(c64(4.0, 0.0), 128).unwrap();
        let b = crate::dynamics::branches_atom_mixture(0.5, c64(4.0, 0.0), 0.0, 128).unwrap();
        assert!(bell.hybrid().max_abs_diff(&purification::purify(&b)) < 1e-15);

        let entangled = initial_atom_field_entangled(c64(4.0, 0.0), 128).unwrap();
        let b =
            crate::dynamics::branches_field_mixture(0.5, c64(4.0, 0.0), c64(-4.0, 0.0), 0.0, 128)
                .unwrap();
        assert!(entangled.hybrid().max_abs_diff(&purification::purify(&b)) < 1e-15);
    }

    #[test]
    fn evolve_at_zero_is_identity() {
        let s = initial_bell_atom_pair(c64(2.0, 0.0), 64).unwrap();
        let out = evolve_two_atom(&s, 0.0).unwrap();
        assert!(out.hybrid().max_abs_diff(s.hybrid()) == 0.0);
    }

    #[test]
    fn spectator_sector_never_leaks() {
        // support starting in the e2 sector stays there
        let mut comps = vec![
            fock::coherent(c64(2.0, 0.0), 64).unwrap(),
            FockVector::zero(64),
            FockVector::zero(64),
            FockVector::zero(64),
        ];
        comps[1] = FockVector::zero(64);
        let s = TwoAtomState::from_hybrid(HybridState::new(comps).unwrap());
        let out = evolve_two_atom(&s, 3.3).unwrap();
        assert_eq!(out.component(2).norm_sqr(), 0.0);
        assert_eq!(out.component(3).norm_sqr(), 0.0);
    }

    #[test]
    fn spectator_probabilities_constant() {
        let s = initial_atom_field_entangled(c64(4.0, 0.0), 128).unwrap();
        let (e0, g0) = s.spectator_probabilities();
        for &lt in &[0.5, 4.4, 12.54, 19.9] {
            let out = evolve_two_atom(&s, lt).unwrap();
            let (e, g) = out.spectator_probabilities();
            assert!((e - e0).abs() < tolerances::SPECTATOR_DRIFT);
            assert!((g - g0).abs() < tolerances::SPECTATOR_DRIFT);
        }
    }

    #[test]
    fn matches_artificial_evolution_under_the_basis_map() {
        let s = initial_bell_atom_pair(c64(4.0, 0.0), 128).unwrap();
        let direct = evolve_two_atom(&s, 7.3).unwrap();
        let relabeled = purification::evolve_artificial(s.hybrid(), 7.3).unwrap();
        // the ordering (ee, ge, eg, gg) is the artificial ordering
        for (label, idx) in [
            (TwoAtomLabel::EE, 0usize),
            (TwoAtomLabel::GE, 1),
            (TwoAtomLabel::EG, 2),
            (TwoAtomLabel::GG, 3),
        ] {
            assert_eq!(basis_map_two_atom(label), idx);
            assert!(
                direct
                    .component(idx)
                    .max_abs_diff(relabeled.component(idx))
                    < 1e-13
            );
        }
    }

    #[test]
    fn evolved_bell_state_matches_branch_components() {
        // term-by-term against the atom-mixture branch wavefunctions
        let s = initial_bell_atom_pair(c64(4.0, 0.0), 128).unwrap();
        let lt = 7.3;
        let out = evolve_two_atom(&s, lt).unwrap();
        let b = crate::dynamics::branches_atom_mixture(0.5, c64(4.0, 0.0), lt, 128).unwrap();
        for k in 0..4 {
            assert!(out.component(k).max_abs_diff(b.branch(k)) < tolerances::TERM_MATCH);
        }
    }

    #[test]
    fn evolved_entangled_state_matches_branch_components() {
        let s = initial_atom_field_entangled(c64(4.0, 0.0), 128).unwrap();
        let lt = 5.1;
        let out = evolve_two_atom(&s, lt).unwrap();
        let b = crate::dynamics::branches_field_mixture(0.5, c64(4.0, 0.0), c64(-4.0, 0.0), lt, 128)
            .unwrap();
        for k in 0..4 {
            assert!(out.component(k).max_abs_diff(b.branch(k)) < tolerances::TERM_MATCH);
        }
    }

    #[test]
    fn equivalence_fidelity_is_one() {
        let times: Vec<f64> = (0..40).map(|k| 0.5 * k as f64).collect();
        for scenario in [Scenario::AtomMixture, Scenario::FieldMixture] {
            let fids = equivalence_report(scenario, c64(4.0, 0.0), 0.5, &times, 128).unwrap();
            for (t, f) in times.iter().zip(&fids) {
                assert!((f - 1.0).abs() < tolerances::FIDELITY, "t={t}: fidelity {f}");
            }
        }
    }

    #[test]
    fn weighted_equivalence_also_holds() {
        // beyond the paper's equal-weight case
        let times: Vec<f64> = (0..10).map(|k| 1.7 * k as f64).collect();
        let fids = equivalence_report(Scenario::AtomMixture, c64(4.0, 0.0), 0.3, &times, 128)
            .unwrap();
        for f in fids {
            assert!((f - 1.0).abs() < tolerances::FIDELITY);
        }
    }
}
