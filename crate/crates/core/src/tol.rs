//! Numerical tolerances used across the crate.
//!
//! Every threshold is named here so tests, the library, and the CLI agree on
//! the same numbers. The rough hierarchy: f64 arithmetic on 16×16 matrices is
//! exact to ~1e-14, the Jacobi eigensolver reconstructs to better than 1e-9,
//! state validation sits two orders above that at 1e-10, and the signalling
//! verdict threshold sits two orders above the 1e-10 numeric floor.

/// Max entrywise |m - m†| for a matrix to count as Hermitian.
pub const HERMITICITY: f64 = 1e-10;

/// Allowed deviation of a density-matrix trace from 1.
pub const STATE_TRACE: f64 = 1e-10;

/// Density matrices may have eigenvalues down to -PSD_STATE.
pub const PSD_STATE: f64 = 1e-10;

/// A map (or Choi matrix) counts as positive when its smallest eigenvalue
/// stays above -PSD_MAP. Boundary cases classify as positive.
pub const PSD_MAP: f64 = 1e-9;

/// Frobenius bound on V diag(λ) V† - m for the eigensolver.
pub const EIG_RECONSTRUCTION: f64 = 1e-9;

/// A state counts as pure (rank-1) when every subdominant eigenvalue is
/// below this.
pub const PURITY: f64 = 1e-10;

/// Measurement branches below this probability carry no conditional state.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// Max entrywise deviation of Σ K†K from the identity for a Kraus set.
pub const KRAUS_COMPLETENESS: f64 = 1e-10;

/// Max branch-output deviation (trace norm) for a map to count as linear.
pub const LINEARITY: f64 = 1e-10;

/// Max |Tr(output) - 1| for a map to count as trace preserving.
pub const TRACE_PRESERVATION: f64 = 1e-10;

/// Numeric floor for the no-signalling distance of lawful maps.
pub const FLATNESS: f64 = 1e-10;

/// Distances above this flip the experiment verdict to SIGNALS. Two orders
/// above FLATNESS so eigensolver noise can never produce a false positive.
pub const VERDICT_THRESHOLD: f64 = 1e-8;

/// POVM validation: element PSD bound and deviation of the element sum
/// from the identity.
pub const POVM: f64 = 1e-10;

/// Conditional probabilities are clamped to [0, 1] after allowing this much
/// negative slack; anything below it flags a non-positive average state.
pub const PROB_CLAMP: f64 = 1e-12;

/// Margin when comparing an average cloning fidelity to the 5/6 bound.
pub const CLONING_BOUND_MARGIN: f64 = 1e-9;
