//! Numerical tolerances and frozen verification thresholds.
//!
//! Every threshold used by the library invariants, the `verify` report and
//! the acceptance tests is defined here, not inline at the call sites.

/// Tail-mass budget near the truncation boundary: a physical state must
/// carry less than this total probability on the top eight levels.
pub const TAIL_MASS: f64 = 1e-14;

/// Width (in levels) of the tail window inspected by [`TAIL_MASS`] checks.
pub const TAIL_WINDOW: usize = 8;

/// Norm drift allowed per unitary evolution call.
pub const NORM_CONSERVATION: f64 = 2e-12;

/// Probability allowed to leak past the truncation boundary per run.
pub const LEAK_BUDGET: f64 = 1e-12;

/// States flagged normalized must satisfy |norm^2 - 1| below this.
pub const STATE_NORM: f64 = 1e-12;

/// Hermiticity slack for small density matrices (elementwise).
pub const HERMITICITY: f64 = 1e-13;

/// Off-diagonal Frobenius norm at which the cyclic Jacobi sweep stops.
pub const JACOBI_OFF_NORM: f64 = 1e-14;

/// Sweep budget for the cyclic Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 60;

/// Reconstruction residual allowed for the small eigensolver, max norm.
pub const EIG_RECONSTRUCTION: f64 = 1e-12;

/// Eigenvalues in [-EIG_CLAMP, 0) are treated as roundoff zeros by the
/// entropy functional; anything below -EIG_CLAMP is an error.
pub const EIG_CLAMP: f64 = 1e-10;

/// Slack when checking that a spectrum sums to one.
pub const SPECTRUM_SUM: f64 = 1e-8;

/// Agreement required between the 4x4 Gram entropy route and the dense
/// N x N diagonalization oracle.
pub const GRAM_VS_ORACLE: f64 = 1e-8;

/// Slack allowed on either side of the Araki-Lieb inequality.
pub const ARAKI_SLACK: f64 = 1e-8;

/// Trace-distance budget for the purification partial-trace check.
pub const TRACE_DISTANCE: f64 = 1e-10;

/// Elementwise budget for the purify/evolve commuting-diagram check.
pub const COMMUTING_DIAGRAM: f64 = 1e-12;

/// Fidelity slack for the two-atom vs purified-state equivalence.
pub const FIDELITY: f64 = 1e-10;

/// Elementwise budget for term-by-term comparisons against the printed
/// evolved two-atom states.
pub const TERM_MATCH: f64 = 1e-12;

/// Spectator-atom probabilities must stay constant within this budget.
pub const SPECTATOR_DRIFT: f64 = 1e-12;

/// Agreement between the branch-norm atomic inversion and its photon
/// distribution series oracle.
pub const INVERSION_SERIES: f64 = 1e-10;

/// Grid-integrated Wigner normalization slack (quadrature + truncation).
pub const WIGNER_NORMALIZATION: f64 = 5e-3;

/// Slack on the Wigner purity identity 2*pi*Integral(W^2) = Tr(rho^2).
pub const WIGNER_PURITY: f64 = 5e-3;

/// Absolute slack on the vacuum Wigner control value W(0,0) = 1/pi.
pub const WIGNER_VACUUM: f64 = 1e-6;

/// Absolute slack on the paper-quoted initial entropies (ln 2 checks).
pub const INITIAL_ENTROPY: f64 = 1e-6;

// --- Frozen collapse/revival thresholds (Fig. 1 scenario: C = 0.5,
// --- alpha = -beta = 4, lambda = 1). Confirmed against the photon-series
// --- oracle before freezing.

/// |W(t)| stays below this on the collapse window.
pub const COLLAPSE_CEILING: f64 = 0.05;

/// Collapse window in units of 1/lambda.
pub const COLLAPSE_WINDOW: (f64, f64) = (5.0, 15.0);

/// max |W(t)| exceeds this somewhere in the revival window.
pub const REVIVAL_FLOOR: f64 = 0.3;

/// Revival window in units of 1/lambda (first revival near 2*pi*sqrt(16)).
pub const REVIVAL_WINDOW: (f64, f64) = (20.0, 30.0);

/// Window on which the field entropy oscillates during the phase-space
/// collision of the mixture components.
pub const ENTROPY_OSCILLATION_WINDOW: (f64, f64) = (10.0, 15.0);

/// Local extrema of S_F counted on a 1000-point grid over
/// [`ENTROPY_OSCILLATION_WINDOW`]; frozen from a fine-grid run.
pub const ENTROPY_OSCILLATION_EXTREMA: usize = 25;

// --- Frozen Wigner-snapshot geometry (Fig. 2 scenario, t = 12.54/lambda).
// --- At that time the two counter-rotating pairs of coherent spots have
// --- collided on the momentum axis; frozen from a derivation run.

/// |W| level defining a principal lobe in the snapshot check.
pub const WIGNER_LOBE_LEVEL: f64 = 0.05;

/// Principal lobes sit beyond this distance from the origin.
pub const WIGNER_LOBE_DISTANCE: f64 = 3.0;

/// Interference structure near the origin exceeds this |W| level
/// somewhere in the box |x|, |p| < 1.5.
pub const WIGNER_INTERFERENCE_LEVEL: f64 = 0.02;

/// Fifth-largest eigenvalue of the field density matrix stays below this
/// (rank <= 4 at all times).
pub const RANK_FOUR_CEILING: f64 = 1e-10;
