//! Property tests for the spec invariants that hold across the whole
//! parameter space, not just at hand-picked points.

use jcpure::dynamics::{
    branches_atom_mixture, branches_field_mixture, evolve_jc, HybridState,
};
use jcpure::entropy::{eigvals_hermitian, entropies_at, von_neumann};
use jcpure::fock::{apply_v, apply_v_dagger, diag_func, FockVector};
use jcpure::observables::atomic_inversion;
use jcpure::purification::{evolve_artificial, gram_matrix, purify};
use num_complex::Complex64;
use proptest::prelude::*;

const DIM: usize = 64;

fn amplitude() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

/// Random normalized vector with the top eight levels empty.
fn bounded_state() -> impl Strategy<Value = FockVector> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), DIM - 8).prop_filter_map(
        "nonzero vector",
        |pairs| {
            let mut amps: Vec<Complex64> = pairs
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect();
            amps.resize(DIM, Complex64::new(0.0, 0.0));
            let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                return None;
            }
            for a in &mut amps {
                *a /= norm;
            }
            Some(FockVector::from_amplitudes(amps).unwrap())
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn branch_norms_always_sum_to_one(
        c in 0.0f64..=1.0,
        alpha in amplitude(),
        beta in amplitude(),
        lt in -30.0f64..30.0,
    ) {
        let b = branches_field_mixture(c, alpha, beta, lt, DIM).unwrap();
        prop_assert!((b.total_norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!(b.leaked_mass < 1e-12);
        let b = branches_atom_mixture(c, alpha, lt, DIM).unwrap();
        prop_assert!((b.total_norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!((purify(&b).norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evolution_is_reversible(state in bounded_state(), ground in bounded_state(), lt in -20.0f64..20.0) {
        // mix two random vectors into a normalized two-level state
        let half = Complex64::new(0.5f64.sqrt(), 0.0);
        let s = HybridState::new(vec![state.scaled(half), ground.scaled(half)]).unwrap();
        let back = evolve_jc(&evolve_jc(&s, lt).unwrap(), -lt).unwrap();
        prop_assert!(back.max_abs_diff(&s) < 1e-12);
        let fwd = evolve_jc(&s, lt).unwrap();
        prop_assert!((fwd.norm_sqr() - s.norm_sqr()).abs() < 2e-12);
    }

    #[test]
    fn phase_operator_identities(v in bounded_state()) {
        // V V+ = 1 holds exactly
        let (up, leaked) = apply_v_dagger(&v);
        prop_assert!(leaked < 1e-28);
        prop_assert_eq!(apply_v(&up), v.clone());
        // V+ V = 1 - |0><0|
        let (round, _) = apply_v_dagger(&apply_v(&v));
        prop_assert_eq!(round.amp(0), Complex64::new(0.0, 0.0));
        for n in 1..DIM {
            prop_assert_eq!(round.amp(n), v.amp(n));
        }
    }

    #[test]
    fn diagonal_operators_commute(v in bounded_state(), a in -5.0f64..5.0, b in -5.0f64..5.0) {
        let f = diag_func(DIM, |n| (a * ((n + 1) as f64).sqrt()).cos()).unwrap();
        let g = diag_func(DIM, |n| (b * (n as f64 + 0.5).ln_1p()).sin()).unwrap();
        let fg = f.apply(&g.apply(&v).unwrap()).unwrap();
        let gf = g.apply(&f.apply(&v).unwrap()).unwrap();
        prop_assert!(fg.max_abs_diff(&gf) < 1e-15);
    }

    #[test]
    fn gram_matrix_is_a_density_matrix(
        c in 0.0f64..=1.0,
        alpha in amplitude(),
        lt in 0.0f64..30.0,
    ) {
        let b = branches_atom_mixture(c, alpha, lt, DIM).unwrap();
        let g = gram_matrix(&b);
        prop_assert!((g.trace() - 1.0).abs() < 1e-12);
        prop_assert!(g.matrix().hermitian_defect() < 1e-13);
        let eigs = eigvals_hermitian(&g).unwrap();
        for &e in &eigs {
            prop_assert!(e > -1e-12);
        }
        let s = von_neumann(&eigs).unwrap();
        prop_assert!(s >= -1e-10 && s <= 2.0 * std::f64::consts::LN_2 + 1e-10);
    }

    #[test]
    fn inversion_is_bounded_and_entropies_consistent(
        c in 0.0f64..=1.0,
        alpha in amplitude(),
        beta in amplitude(),
        lt in 0.0f64..30.0,
    ) {
        let b = branches_field_mixture(c, alpha, beta, lt, DIM).unwrap();
        prop_assert!(atomic_inversion(&b).abs() <= 1.0 + 1e-12);
        let rec = entropies_at(&b).unwrap();
        prop_assert!(rec.s_atom <= std::f64::consts::LN_2 + 1e-10);
        prop_assert!(rec.araki_upper >= rec.araki_lower - 1e-15);
    }

    #[test]
    fn commuting_diagram_random_parameters(
        c in 0.0f64..=1.0,
        alpha in amplitude(),
        lt in 0.0f64..25.0,
    ) {
        let b0 = branches_atom_mixture(c, alpha, 0.0, DIM).unwrap();
        let via_artificial = evolve_artificial(&purify(&b0), lt).unwrap();
        let direct = purify(&branches_atom_mixture(c, alpha, lt, DIM).unwrap());
        prop_assert!(via_artificial.max_abs_diff(&direct) < 1e-12);
    }
}
