//! Qubit and bipartite state types, Bloch-vector conversions, and Alice's
//! projective measurement producing Bob's conditional ensemble.
//!
//! Convention inherited by every other module: Alice is tensor factor 0
//! (leftmost), Bob is factor 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::{self, CMatrix};
use crate::tol;

/// Real 3-vector s parameterizing a qubit state (I + s·σ)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const X: BlochVector = BlochVector { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: BlochVector = BlochVector { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: BlochVector = BlochVector { x: 0.0, y: 0.0, z: 1.0 };

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= tol::HERMITICITY
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// The operator s·σ.
    pub fn dot_sigma(&self) -> CMatrix {
        let [sx, sy, sz] = mat::paulis();
        sx.scale_re(self.x)
            .add(&sy.scale_re(self.y))
            .add(&sz.scale_re(self.z))
    }
}

impl Serialize for BlochVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y, self.z].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BlochVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[f64; 3]>::deserialize(deserializer)?;
        Ok(BlochVector::new(x, y, z))
    }
}

/// Hermitian, unit-trace, positive-semidefinite state of 1..4 qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
    num_qubits: usize,
}

impl DensityMatrix {
    /// Validate a matrix as a density operator: square power-of-two
    /// dimension, Hermitian, unit trace, eigenvalues above -1e-10.
    pub fn try_new(mat: CMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::structure(format!(
                "density matrix must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        mat.validate_finite()?;
        let dim = mat.rows();
        let num_qubits = match dim {
            2 => 1,
            4 => 2,
            8 => 3,
            16 => 4,
            _ => {
                return Err(Error::structure(format!(
                    "density matrix dimension {dim} is not 2^n for n in 1..=4"
                )))
            }
        };
        let herm_err = mat.hermitian_error();
        if herm_err > tol::HERMITICITY {
            return Err(Error::contract(format!(
                "density matrix is not Hermitian (max |m - m†| entry = {herm_err:.3e})"
            )));
        }
        let trace_err = (mat.trace() - mat::ONE).norm();
        if trace_err > tol::STATE_TRACE {
            return Err(Error::contract(format!(
                "density matrix trace deviates from 1 by {trace_err:.3e}"
            )));
        }
        let min_eig = mat.min_eigenvalue()?;
        if min_eig < -tol::PSD_STATE {
            return Err(Error::contract(format!(
                "density matrix has negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self { mat, num_qubits })
    }

    /// State |ψ⟩⟨ψ| from a ket, normalizing the vector first.
    pub fn from_ket(ket: &CMatrix) -> Result<Self> {
        if ket.cols() != 1 {
            return Err(Error::structure("expected a column vector"));
        }
        let norm = ket.frobenius_norm();
        if norm < 1e-12 {
            return Err(Error::domain("cannot normalize a zero vector"));
        }
        let unit = ket.scale_re(1.0 / norm);
        Self::try_new(CMatrix::outer(&unit, &unit))
    }

    pub fn mat(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> CMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        Self {
            mat: CMatrix::identity(dim).scale_re(1.0 / dim as f64),
            num_qubits,
        }
    }

    /// Rank-1 within tolerance: every subdominant eigenvalue below 1e-10.
    pub fn is_pure(&self) -> bool {
        match self.mat.herm_eig() {
            Ok((eigenvalues, _)) => eigenvalues.iter().skip(1).all(|l| l.abs() <= tol::PURITY),
            Err(_) => false,
        }
    }

    /// Dominant eigenvector, used to recover |ψ⟩ from a pure state.
    pub fn dominant_ket(&self) -> CMatrix {
        let (_, v) = self.mat.herm_eig().expect("valid states are Hermitian");
        CMatrix::from_fn(self.dim(), 1, |i, _| v.get(i, 0))
    }
}

/// Bloch vector of a single-qubit state: s_j = Tr(ρ σ_j).
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.num_qubits() != 1 {
        return Err(Error::structure(format!(
            "Bloch vector is defined for one qubit, state has {}",
            rho.num_qubits()
        )));
    }
    let [sx, sy, sz] = mat::paulis();
    let comp = |p: &CMatrix| rho.mat().matmul(p).trace().re;
    Ok(BlochVector::new(comp(&sx), comp(&sy), comp(&sz)))
}

/// The state (I + s·σ)/2. Rejects |s| > 1 + 1e-10 (not a state).
pub fn bloch_to_density(s: &BlochVector) -> Result<DensityMatrix> {
    let norm = s.norm();
    if norm > 1.0 + tol::HERMITICITY {
        return Err(Error::domain(format!(
            "Bloch vector norm {norm:.12} exceeds 1; no such density matrix"
        )));
    }
    let m = CMatrix::identity(2).add(&s.dot_sigma()).scale_re(0.5);
    // PSD by |s| ≤ 1; route through validation anyway to keep one code path.
    DensityMatrix::try_new(m)
}

/// Two-qubit state shared by Alice (factor 0) and Bob (factor 1).
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    rho: DensityMatrix,
}

impl BipartiteState {
    pub fn try_new(rho: DensityMatrix) -> Result<Self> {
        if rho.num_qubits() != 2 {
            return Err(Error::structure(format!(
                "bipartite state must be two qubits, got {}",
                rho.num_qubits()
            )));
        }
        Ok(Self { rho })
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn mat(&self) -> &CMatrix {
        self.rho.mat()
    }

    pub fn alice_marginal(&self) -> CMatrix {
        self.mat().partial_trace(&[2, 2], 1).expect("4x4 by construction")
    }

    pub fn bob_marginal(&self) -> CMatrix {
        self.mat().partial_trace(&[2, 2], 0).expect("4x4 by construction")
    }
}

/// The singlet (|01⟩ - |10⟩)/√2.
pub fn singlet() -> BipartiteState {
    partially_entangled(std::f64::consts::FRAC_PI_4).expect("π/4 is in range")
}

/// Pure state cos θ|01⟩ - sin θ|10⟩ for θ in [0, π/2].
///
/// θ = π/4 is the singlet; θ = 0 the product state |01⟩.
pub fn partially_entangled(theta: f64) -> Result<BipartiteState> {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(Error::domain(format!(
            "entanglement angle {theta} outside [0, π/2]"
        )));
    }
    let mut ket = CMatrix::zeros(4, 1);
    ket.set(1, 0, Complex64::new(theta.cos(), 0.0));
    ket.set(2, 0, Complex64::new(-theta.sin(), 0.0));
    BipartiteState::try_new(DensityMatrix::from_ket(&ket)?)
}

/// One branch of a conditional ensemble. Branches below the zero-probability
/// threshold carry no state and are skipped when averaging.
#[derive(Debug, Clone)]
pub struct Branch {
    pub probability: f64,
    pub state: Option<DensityMatrix>,
}

/// Probability-weighted mixture of Bob-side states, e.g. the two outcomes of
/// a measurement Alice made but whose result Bob does not know.
#[derive(Debug, Clone)]
pub struct ConditionalEnsemble {
    branches: Vec<Branch>,
}

impl ConditionalEnsemble {
    pub fn try_new(branches: Vec<Branch>) -> Result<Self> {
        let total: f64 = branches.iter().map(|b| b.probability).sum();
        if (total - 1.0).abs() > tol::HERMITICITY {
            return Err(Error::contract(format!(
                "branch probabilities sum to {total:.12}, expected 1"
            )));
        }
        for (i, b) in branches.iter().enumerate() {
            if b.probability < -tol::ZERO_PROBABILITY {
                return Err(Error::contract(format!("branch {i} has negative probability")));
            }
            if b.probability >= tol::ZERO_PROBABILITY && b.state.is_none() {
                return Err(Error::contract(format!(
                    "branch {i} has probability {} but no state",
                    b.probability
                )));
            }
        }
        Ok(Self { branches })
    }

    /// Degenerate ensemble holding a single state with certainty.
    pub fn pure_branch(state: DensityMatrix) -> Self {
        Self {
            branches: vec![Branch { probability: 1.0, state: Some(state) }],
        }
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    /// Active (probability-carrying) branches.
    pub fn active(&self) -> impl Iterator<Item = (f64, &DensityMatrix)> {
        self.branches.iter().filter_map(|b| {
            b.state.as_ref().map(|s| (b.probability, s))
        })
    }

    /// Σ p_b ρ_b over active branches.
    pub fn average(&self) -> CMatrix {
        let mut it = self.active();
        let (p0, s0) = it.next().expect("ensemble has at least one active branch");
        let mut acc = s0.mat().scale_re(p0);
        for (p, s) in it {
            acc = acc.add(&s.mat().scale_re(p));
        }
        acc
    }
}

/// Alice measures along the unit direction n; Bob keeps the conditional
/// ensemble over her two outcomes.
///
/// p(±n) = Tr[(P_±n ⊗ I) ρ] with P_±n = (I ± n·σ)/2, and each branch state
/// is Tr_A[(P ⊗ I) ρ (P ⊗ I)]/p. Outcomes below probability 1e-12 are
/// carried as stateless placeholder branches.
pub fn measure_alice(state: &BipartiteState, n: &BlochVector) -> Result<ConditionalEnsemble> {
    if !n.is_unit() {
        return Err(Error::domain(format!(
            "measurement direction must be a unit vector, |n| = {:.12}",
            n.norm()
        )));
    }
    let eye = CMatrix::identity(2);
    let n_sigma = n.dot_sigma();
    let mut branches = Vec::with_capacity(2);
    for sign in [1.0f64, -1.0] {
        let projector = eye.add(&n_sigma.scale_re(sign)).scale_re(0.5);
        let proj_full = projector.tensor(&eye)?;
        let weighted = proj_full.matmul(state.mat()).matmul(&proj_full);
        let probability = weighted.trace().re;
        if probability < tol::ZERO_PROBABILITY {
            branches.push(Branch { probability: probability.max(0.0), state: None });
            continue;
        }
        let reduced = weighted.partial_trace(&[2, 2], 0)?.scale_re(1.0 / probability);
        let conditional = DensityMatrix::try_new(reduced.hermitized())?;
        branches.push(Branch { probability, state: Some(conditional) });
    }
    ConditionalEnsemble::try_new(branches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{self, Rng64};

    #[test]
    fn bloch_poles_and_equator() {
        let up = bloch_to_density(&BlochVector::Z).unwrap();
        assert!(up.mat().max_abs_diff(&CMatrix::diag(&[1.0, 0.0])) < 1e-15);

        let mixed = bloch_to_density(&BlochVector::new(0.0, 0.0, 0.0)).unwrap();
        assert!(mixed.mat().max_abs_diff(&CMatrix::identity(2).scale_re(0.5)) < 1e-15);

        let plus = bloch_to_density(&BlochVector::X).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((plus.mat().get(i, j) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn bloch_rejects_overlong_vectors() {
        let err = bloch_to_density(&BlochVector::new(0.8, 0.8, 0.0)).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn bloch_roundtrip() {
        let mut rng = Rng64::new(41);
        for _ in 0..100 {
            let scale = rng.next_f64();
            let u = sample::unit_bloch(&mut rng);
            let s = BlochVector::new(u.x * scale, u.y * scale, u.z * scale);
            let rho = bloch_to_density(&s).unwrap();
            let back = density_to_bloch(&rho).unwrap();
            assert!((back.x - s.x).abs() < 1e-12);
            assert!((back.y - s.y).abs() < 1e-12);
            assert!((back.z - s.z).abs() < 1e-12);
        }
    }

    #[test]
    fn singlet_marginals_and_spectrum() {
        let s = singlet();
        let half = CMatrix::identity(2).scale_re(0.5);
        assert!(s.alice_marginal().max_abs_diff(&half) < 1e-12);
        assert!(s.bob_marginal().max_abs_diff(&half) < 1e-12);

        // Overlap with |01⟩.
        assert!((s.mat().get(1, 1).re - 0.5).abs() < 1e-12);

        let (eigenvalues, _) = s.mat().herm_eig().unwrap();
        assert!((eigenvalues[0] - 1.0).abs() < 1e-12);
        for l in &eigenvalues[1..] {
            assert!(l.abs() < 1e-12);
        }
    }

    #[test]
    fn partially_entangled_family() {
        let quarter = partially_entangled(std::f64::consts::FRAC_PI_4).unwrap();
        assert!(quarter.mat().max_abs_diff(singlet().mat()) < 1e-12);

        let product = partially_entangled(0.0).unwrap();
        let ket01 = CMatrix::basis_ket(4, 1);
        assert!(product.mat().max_abs_diff(&CMatrix::outer(&ket01, &ket01)) < 1e-12);

        assert!(partially_entangled(-0.1).is_err());
        assert!(partially_entangled(1.6).is_err());
    }

    #[test]
    fn partially_entangled_alice_marginal_is_diagonal() {
        let mut rng = Rng64::new(43);
        for _ in 0..20 {
            let theta = rng.next_f64() * std::f64::consts::FRAC_PI_2;
            let state = partially_entangled(theta).unwrap();
            let expected = CMatrix::diag(&[theta.cos().powi(2), theta.sin().powi(2)]);
            assert!(state.alice_marginal().max_abs_diff(&expected) < 1e-12);
        }
    }

    #[test]
    fn measure_singlet_along_z() {
        let ens = measure_alice(&singlet(), &BlochVector::Z).unwrap();
        let branches = ens.branches();
        assert_eq!(branches.len(), 2);
        assert!((branches[0].probability - 0.5).abs() < 1e-12);
        assert!((branches[1].probability - 0.5).abs() < 1e-12);
        let down = CMatrix::diag(&[0.0, 1.0]);
        let up = CMatrix::diag(&[1.0, 0.0]);
        assert!(branches[0].state.as_ref().unwrap().mat().max_abs_diff(&down) < 1e-12);
        assert!(branches[1].state.as_ref().unwrap().mat().max_abs_diff(&up) < 1e-12);
    }

    #[test]
    fn singlet_branches_are_anticorrelated_along_any_axis() {
        // Rotate-and-check oracle: measuring the singlet along any unit n
        // collapses Bob onto the pure states along ∓n with probability 1/2.
        let mut rng = Rng64::new(47);
        for _ in 0..100 {
            let n = sample::unit_bloch(&mut rng);
            let ens = measure_alice(&singlet(), &n).unwrap();
            let branches = ens.branches();
            for (i, sign) in [1.0f64, -1.0].iter().enumerate() {
                assert!((branches[i].probability - 0.5).abs() < 1e-12);
                let b = density_to_bloch(branches[i].state.as_ref().unwrap()).unwrap();
                assert!((b.x + sign * n.x).abs() < 1e-10);
                assert!((b.y + sign * n.y).abs() < 1e-10);
                assert!((b.z + sign * n.z).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn measure_partially_entangled_probabilities() {
        let state = partially_entangled(std::f64::consts::FRAC_PI_6).unwrap();
        let ens = measure_alice(&state, &BlochVector::Z).unwrap();
        assert!((ens.branches()[0].probability - 0.75).abs() < 1e-12);
        assert!((ens.branches()[1].probability - 0.25).abs() < 1e-12);
    }

    #[test]
    fn measurement_is_average_preserving() {
        let mut rng = Rng64::new(53);
        for _ in 0..50 {
            let state = sample::random_bipartite(&mut rng);
            let n = sample::unit_bloch(&mut rng);
            let ens = measure_alice(&state, &n).unwrap();
            assert!(ens.average().max_abs_diff(&state.bob_marginal()) < 1e-12);
        }
    }

    #[test]
    fn zero_probability_branch_is_flagged() {
        // |01⟩ measured along z: Alice is |0⟩ with certainty.
        let state = partially_entangled(0.0).unwrap();
        let ens = measure_alice(&state, &BlochVector::Z).unwrap();
        let branches = ens.branches();
        assert!((branches[0].probability - 1.0).abs() < 1e-12);
        assert!(branches[1].probability < 1e-12);
        assert!(branches[1].state.is_none());
        // Averaging skips the placeholder.
        assert!(ens.average().max_abs_diff(&CMatrix::diag(&[0.0, 1.0])) < 1e-12);
    }

    #[test]
    fn measure_rejects_non_unit_direction() {
        let err = measure_alice(&singlet(), &BlochVector::new(0.0, 0.0, 0.5)).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn density_validation_catches_bad_inputs() {
        // Non-unit trace.
        assert!(DensityMatrix::try_new(CMatrix::identity(2)).is_err());
        // Negative eigenvalue.
        assert!(DensityMatrix::try_new(CMatrix::diag(&[1.5, -0.5])).is_err());
        // Dimension not a power of two.
        let m3 = CMatrix::diag(&[0.4, 0.3, 0.3]);
        assert!(DensityMatrix::try_new(m3).is_err());
    }
}
