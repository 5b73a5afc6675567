//! Bob's local maps, lawful and unlawful, with uniform application
//! semantics on density matrices and conditional ensembles.
//!
//! Five representations live behind the [`LocalMap`] union:
//!
//! * [`KrausMap`]: completely positive trace-preserving channels,
//! * [`TransferMap`]: arbitrary linear Hermiticity-preserving maps as a
//!   supermatrix on vectorized states (column-stacking convention),
//! * [`BlochAffineCloneMap`]: the two-clone family ¼[I⊗I + η(s·σ⊗I +
//!   I⊗s·σ) + tΣσ_j⊗σ_j], linear in ρ and deliberately allowed to be
//!   non-positive,
//! * [`BlochNonlinearCloneMap`]: the same shape with f_j(s_j) in place of
//!   ηs_j, defined on pure states only,
//! * [`PureBranchMap`]: |ψ⟩ ↦ F·ψ^⊗N + (1−F)·ψ⊥^⊗N (or the factorized
//!   product variant), also pure-state-defined.
//!
//! Map outputs come back as raw Hermitian matrices, not `DensityMatrix`,
//! so non-positive outputs stay representable and inspectable. Ensembles
//! are mapped branch-wise and then probability-mixed; for the linear
//! representations this coincides with mapping the ensemble average.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat::{self, CMatrix};
use crate::states::{
    bloch_to_density, density_to_bloch, ConditionalEnsemble, DensityMatrix,
};
use crate::tol;

/// Trace-preserving completely positive map given by Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausMap {
    ops: Vec<CMatrix>,
    d_in: usize,
    d_out: usize,
}

impl KrausMap {
    /// Validates Σ K†K = I within 1e-10.
    pub fn try_new(ops: Vec<CMatrix>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::structure("a Kraus map needs at least one operator"));
        }
        let d_out = ops[0].rows();
        let d_in = ops[0].cols();
        for (i, k) in ops.iter().enumerate() {
            if k.rows() != d_out || k.cols() != d_in {
                return Err(Error::structure(format!(
                    "Kraus operator {i} is {}x{}, expected {d_out}x{d_in}",
                    k.rows(),
                    k.cols()
                )));
            }
            k.validate_finite()?;
        }
        let mut completeness = CMatrix::zeros(d_in, d_in);
        for k in &ops {
            completeness = completeness.add(&k.adjoint().matmul(k));
        }
        let dev = completeness.max_abs_diff(&CMatrix::identity(d_in));
        if dev > tol::KRAUS_COMPLETENESS {
            return Err(Error::contract(format!(
                "Kraus operators violate Σ K†K = I by {dev:.3e}"
            )));
        }
        Ok(Self { ops, d_in, d_out })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            ops: vec![CMatrix::identity(dim)],
            d_in: dim,
            d_out: dim,
        }
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    /// Σ K x K† for any matrix argument.
    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.d_out, self.d_out);
        for k in &self.ops {
            out = out.add(&k.matmul(x).matmul(&k.adjoint()));
        }
        out
    }
}

/// Column-stacking vectorization: vec(x)[i + j·rows] = x[i, j].
pub(crate) fn vectorize(x: &CMatrix) -> CMatrix {
    let mut data = Vec::with_capacity(x.rows() * x.cols());
    for j in 0..x.cols() {
        for i in 0..x.rows() {
            data.push(x.get(i, j));
        }
    }
    CMatrix::new(x.rows() * x.cols(), 1, data)
}

pub(crate) fn unvectorize(v: &CMatrix, dim: usize) -> CMatrix {
    assert_eq!(v.cols(), 1, "unvectorize expects a column vector");
    assert_eq!(v.rows(), dim * dim, "vector length must be dim²");
    CMatrix::from_fn(dim, dim, |i, j| v.get(i + j * dim, 0))
}

/// Linear map encoded as a d_out²×d_in² supermatrix acting on vectorized
/// density matrices. Need not be positive; must preserve Hermiticity.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMap {
    super_mat: CMatrix,
    d_in: usize,
    d_out: usize,
}

impl TransferMap {
    /// Validates shape (perfect-square side lengths) and Hermiticity
    /// preservation: S[(i+j·d), (l+k·d)] = conj(S[(j+i·d), (k+l·d)]) within
    /// 1e-10, which is exactly "Hermitian in ⇒ Hermitian out".
    pub fn try_new(super_mat: CMatrix) -> Result<Self> {
        super_mat.validate_finite()?;
        let d_out = int_sqrt(super_mat.rows()).ok_or_else(|| {
            Error::structure(format!(
                "supermatrix row count {} is not a perfect square",
                super_mat.rows()
            ))
        })?;
        let d_in = int_sqrt(super_mat.cols()).ok_or_else(|| {
            Error::structure(format!(
                "supermatrix column count {} is not a perfect square",
                super_mat.cols()
            ))
        })?;
        let mut dev = 0.0f64;
        for i in 0..d_out {
            for j in 0..d_out {
                for k in 0..d_in {
                    for l in 0..d_in {
                        let a = super_mat.get(i + j * d_out, l + k * d_in);
                        let b = super_mat.get(j + i * d_out, k + l * d_in).conj();
                        dev = dev.max((a - b).norm());
                    }
                }
            }
        }
        if dev > tol::HERMITICITY {
            return Err(Error::contract(format!(
                "transfer map does not preserve Hermiticity (deviation {dev:.3e})"
            )));
        }
        Ok(Self { super_mat, d_in, d_out })
    }

    /// Supermatrix of a Kraus map: Σ conj(K) ⊗ K.
    pub fn from_kraus(map: &KrausMap) -> Self {
        let mut super_mat = CMatrix::zeros(map.d_out() * map.d_out(), map.d_in() * map.d_in());
        for k in map.ops() {
            super_mat = super_mat.add(&k.conj().tensor(k).expect("supermatrix within workspace"));
        }
        Self {
            super_mat,
            d_in: map.d_in(),
            d_out: map.d_out(),
        }
    }

    /// Supermatrix of the Bloch-affine clone family, built column by column
    /// from its action on matrix units.
    pub fn from_bloch_affine(map: &BlochAffineCloneMap) -> Self {
        let d_in = 2;
        let d_out = 4;
        let mut super_mat = CMatrix::zeros(d_out * d_out, d_in * d_in);
        for k in 0..d_in {
            for l in 0..d_in {
                let mut unit = CMatrix::zeros(d_in, d_in);
                unit.set(k, l, mat::ONE);
                let image = vectorize(&map.apply_linear(&unit));
                for r in 0..d_out * d_out {
                    super_mat.set(r, k + l * d_in, image.get(r, 0));
                }
            }
        }
        Self { super_mat, d_in, d_out }
    }

    pub fn super_mat(&self) -> &CMatrix {
        &self.super_mat
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    /// Rescale the whole map; scaling by c multiplies every output trace by
    /// c, which is how the deliberately non-trace-preserving test maps are
    /// built.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            super_mat: self.super_mat.scale_re(factor),
            d_in: self.d_in,
            d_out: self.d_out,
        }
    }

    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        unvectorize(&self.super_mat.matmul(&vectorize(x)), self.d_out)
    }
}

fn int_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n && r > 0).then_some(r)
}

/// Two-clone map ¼[I⊗I + η(s·σ⊗I + I⊗s·σ) + tΣ_j σ_j⊗σ_j] on input Bloch
/// vector s. Affine in s, hence linear on density operators; parameters are
/// unconstrained so the non-positive region stays representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAffineCloneMap {
    pub eta: f64,
    pub t: f64,
}

impl BlochAffineCloneMap {
    pub fn new(eta: f64, t: f64) -> Self {
        assert!(eta.is_finite() && t.is_finite(), "parameters must be finite");
        Self { eta, t }
    }

    /// Linear extension to arbitrary 2×2 arguments:
    /// x ↦ ¼[Tr(x)(I⊗I + tΣσσ) + ηΣ_j Tr(xσ_j)(σ_j⊗I + I⊗σ_j)].
    pub fn apply_linear(&self, x: &CMatrix) -> CMatrix {
        assert_eq!((x.rows(), x.cols()), (2, 2), "Bloch-affine map takes 2x2 inputs");
        let eye2 = CMatrix::identity(2);
        let mut out = CMatrix::identity(4)
            .add(&pauli_correlator().scale_re(self.t))
            .scale(x.trace());
        for sigma in mat::paulis() {
            let coeff = x.matmul(&sigma).trace() * Complex64::new(self.eta, 0.0);
            let sym = sigma
                .tensor(&eye2)
                .expect("4x4")
                .add(&eye2.tensor(&sigma).expect("4x4"));
            out = out.add(&sym.scale(coeff));
        }
        out.scale_re(0.25)
    }
}

/// Σ_j σ_j ⊗ σ_j.
fn pauli_correlator() -> CMatrix {
    let mut acc = CMatrix::zeros(4, 4);
    for sigma in mat::paulis() {
        acc = acc.add(&sigma.tensor(&sigma).expect("4x4"));
    }
    acc
}

/// Componentwise function family for the non-linear clone map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionFamily {
    /// f(s) = sᵏ for integer k ≥ 1; k = 1 recovers the affine map with η = 1.
    Power(u32),
    /// f(s) = s².
    Square,
    /// f(s) = |s|.
    Abs,
}

impl FunctionFamily {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            FunctionFamily::Power(k) => s.powi(*k as i32),
            FunctionFamily::Square => s * s,
            FunctionFamily::Abs => s.abs(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FunctionFamily::Power(0) => {
                Err(Error::domain("power family needs exponent k ≥ 1"))
            }
            _ => Ok(()),
        }
    }
}

/// Non-linear two-clone map: ¼[I⊗I + Σ_j f_j(s_j)(σ_j⊗I + I⊗σ_j) + tΣσσ].
/// Defined on pure states only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochNonlinearCloneMap {
    pub f: [FunctionFamily; 3],
    pub t: f64,
}

impl BlochNonlinearCloneMap {
    /// Same function on all three Bloch components.
    pub fn isotropic(f: FunctionFamily, t: f64) -> Result<Self> {
        Self::new([f, f, f], t)
    }

    pub fn new(f: [FunctionFamily; 3], t: f64) -> Result<Self> {
        for family in &f {
            family.validate()?;
        }
        if !t.is_finite() {
            return Err(Error::domain("correlation weight t must be finite"));
        }
        Ok(Self { f, t })
    }

    fn apply_pure(&self, rho: &DensityMatrix) -> Result<CMatrix> {
        let s = density_to_bloch(rho)?;
        let eye2 = CMatrix::identity(2);
        let mut out = CMatrix::identity(4).add(&pauli_correlator().scale_re(self.t));
        for (j, sigma) in mat::paulis().into_iter().enumerate() {
            let g = self.f[j].eval(s.components()[j]);
            let sym = sigma
                .tensor(&eye2)
                .expect("4x4")
                .add(&eye2.tensor(&sigma).expect("4x4"));
            out = out.add(&sym.scale_re(g));
        }
        Ok(out.scale_re(0.25))
    }
}

/// Output structure of the pure-branch clone map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CloneVariant {
    /// F·(ψψ†)^⊗N + (1−F)·(ψ⊥ψ⊥†)^⊗N.
    Mixture,
    /// (F·ψψ† + (1−F)·ψ⊥ψ⊥†)^⊗N.
    Factorized,
}

/// Pure-state-defined 1→N cloner parameterized by a fidelity F ∈ [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureBranchMap {
    pub n_clones: usize,
    pub fidelity: f64,
    pub variant: CloneVariant,
}

impl PureBranchMap {
    pub fn try_new(n_clones: usize, fidelity: f64, variant: CloneVariant) -> Result<Self> {
        if !(2..=4).contains(&n_clones) {
            return Err(Error::domain(format!(
                "clone count {n_clones} outside the supported range 2..=4"
            )));
        }
        if !(0.0..=1.0).contains(&fidelity) {
            return Err(Error::domain(format!(
                "fidelity {fidelity} outside [0, 1]"
            )));
        }
        Ok(Self { n_clones, fidelity, variant })
    }

    fn apply_pure(&self, rho: &DensityMatrix) -> Result<CMatrix> {
        let psi = rho.dominant_ket();
        let psi_perp = orthogonal_ket(&psi);
        match self.variant {
            CloneVariant::Mixture => {
                let big = kron_power_ket(&psi, self.n_clones)?;
                let big_perp = kron_power_ket(&psi_perp, self.n_clones)?;
                Ok(CMatrix::outer(&big, &big)
                    .scale_re(self.fidelity)
                    .add(&CMatrix::outer(&big_perp, &big_perp).scale_re(1.0 - self.fidelity)))
            }
            CloneVariant::Factorized => {
                let single = CMatrix::outer(&psi, &psi)
                    .scale_re(self.fidelity)
                    .add(&CMatrix::outer(&psi_perp, &psi_perp).scale_re(1.0 - self.fidelity));
                let mut out = single.clone();
                for _ in 1..self.n_clones {
                    out = out.tensor(&single)?;
                }
                Ok(out)
            }
        }
    }
}

fn kron_power_ket(ket: &CMatrix, n: usize) -> Result<CMatrix> {
    let mut out = ket.clone();
    for _ in 1..n {
        out = out.tensor(ket)?;
    }
    Ok(out)
}

/// Orthogonal partner of a qubit ket: (a, b) ↦ (−b̄, ā).
fn orthogonal_ket(ket: &CMatrix) -> CMatrix {
    assert_eq!((ket.rows(), ket.cols()), (2, 1), "expected a qubit ket");
    CMatrix::ket(&[-ket.get(1, 0).conj(), ket.get(0, 0).conj()])
}

/// Tagged union over the five map representations.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalMap {
    Kraus(KrausMap),
    Transfer(TransferMap),
    BlochAffine(BlochAffineCloneMap),
    BlochNonlinear(BlochNonlinearCloneMap),
    PureBranch(PureBranchMap),
}

impl LocalMap {
    pub fn d_in(&self) -> usize {
        match self {
            LocalMap::Kraus(m) => m.d_in(),
            LocalMap::Transfer(m) => m.d_in(),
            LocalMap::BlochAffine(_) | LocalMap::BlochNonlinear(_) | LocalMap::PureBranch(_) => 2,
        }
    }

    pub fn d_out(&self) -> usize {
        match self {
            LocalMap::Kraus(m) => m.d_out(),
            LocalMap::Transfer(m) => m.d_out(),
            LocalMap::BlochAffine(_) | LocalMap::BlochNonlinear(_) => 4,
            LocalMap::PureBranch(m) => 1 << m.n_clones,
        }
    }

    /// True for the representations that are linear by construction.
    pub fn is_linear_rep(&self) -> bool {
        matches!(
            self,
            LocalMap::Kraus(_) | LocalMap::Transfer(_) | LocalMap::BlochAffine(_)
        )
    }

    /// True for the representations defined only on pure inputs.
    pub fn is_pure_state_defined(&self) -> bool {
        matches!(self, LocalMap::BlochNonlinear(_) | LocalMap::PureBranch(_))
    }

    /// Action on an arbitrary matrix argument, available only for the linear
    /// representations (used by the Choi construction and the transfer
    /// cross-checks).
    pub fn apply_linear(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.rows() != self.d_in() || x.cols() != self.d_in() {
            return Err(Error::structure(format!(
                "map expects {0}x{0} inputs, got {1}x{2}",
                self.d_in(),
                x.rows(),
                x.cols()
            )));
        }
        match self {
            LocalMap::Kraus(m) => Ok(m.apply(x)),
            LocalMap::Transfer(m) => Ok(m.apply(x)),
            LocalMap::BlochAffine(m) => Ok(m.apply_linear(x)),
            LocalMap::BlochNonlinear(_) | LocalMap::PureBranch(_) => Err(Error::contract(
                "nonlinear maps have no action on general operators",
            )),
        }
    }

    /// Apply the map to a state. Output is Hermitian and unit-trace for all
    /// five representations but not necessarily positive; it is returned raw
    /// rather than as a validated `DensityMatrix`.
    ///
    /// The pure-state-defined representations reject mixed inputs.
    pub fn apply_to_density(&self, rho: &DensityMatrix) -> Result<CMatrix> {
        if rho.dim() != self.d_in() {
            return Err(Error::structure(format!(
                "map expects dimension {}, state has {}",
                self.d_in(),
                rho.dim()
            )));
        }
        match self {
            LocalMap::Kraus(m) => Ok(m.apply(rho.mat())),
            LocalMap::Transfer(m) => Ok(m.apply(rho.mat())),
            LocalMap::BlochAffine(m) => Ok(m.apply_linear(rho.mat())),
            LocalMap::BlochNonlinear(m) => {
                require_pure(rho)?;
                m.apply_pure(rho)
            }
            LocalMap::PureBranch(m) => {
                require_pure(rho)?;
                m.apply_pure(rho)
            }
        }
    }

    /// Branch-wise application followed by probability mixing. For the
    /// linear representations this equals applying the map to the ensemble
    /// average.
    pub fn apply_to_ensemble(&self, ensemble: &ConditionalEnsemble) -> Result<CMatrix> {
        let mut out = CMatrix::zeros(self.d_out(), self.d_out());
        for (p, state) in ensemble.active() {
            out = out.add(&self.apply_to_density(state)?.scale_re(p));
        }
        Ok(out)
    }
}

fn require_pure(rho: &DensityMatrix) -> Result<()> {
    if !rho.is_pure() {
        return Err(Error::contract(
            "this map is defined on pure states only; got a mixed input",
        ));
    }
    Ok(())
}

/// The antipodal Bloch state of a pure qubit state; overlap with the input
/// is zero.
pub fn orthogonal_pure(psi: &DensityMatrix) -> Result<DensityMatrix> {
    if psi.num_qubits() != 1 {
        return Err(Error::structure("orthogonal_pure takes a single-qubit state"));
    }
    require_pure(psi)?;
    let s = density_to_bloch(psi)?;
    bloch_to_density(&s.neg())
}

/// Partial trace of a two-clone output onto one clone. `clone_index`
/// selects which clone to keep.
pub fn clone_marginal(two_clone_output: &CMatrix, clone_index: usize) -> Result<CMatrix> {
    if two_clone_output.rows() != 4 || two_clone_output.cols() != 4 {
        return Err(Error::structure(format!(
            "clone marginal expects a 4x4 two-clone output, got {}x{}",
            two_clone_output.rows(),
            two_clone_output.cols()
        )));
    }
    if clone_index > 1 {
        return Err(Error::structure("clone index must be 0 or 1"));
    }
    if two_clone_output.hermitian_error() > tol::HERMITICITY {
        return Err(Error::contract("clone marginal expects a Hermitian output"));
    }
    if (two_clone_output.trace() - mat::ONE).norm() > tol::STATE_TRACE {
        return Err(Error::contract("clone marginal expects a unit-trace output"));
    }
    two_clone_output.partial_trace(&[2, 2], 1 - clone_index)
}

/// Convenience constructors for the example maps.
impl LocalMap {
    pub fn bloch_affine(eta: f64, t: f64) -> Self {
        LocalMap::BlochAffine(BlochAffineCloneMap::new(eta, t))
    }

    pub fn bloch_nonlinear(f: FunctionFamily, t: f64) -> Result<Self> {
        Ok(LocalMap::BlochNonlinear(BlochNonlinearCloneMap::isotropic(f, t)?))
    }

    pub fn pure_branch(n_clones: usize, fidelity: f64, variant: CloneVariant) -> Result<Self> {
        Ok(LocalMap::PureBranch(PureBranchMap::try_new(n_clones, fidelity, variant)?))
    }

    pub fn identity_channel(dim: usize) -> Self {
        LocalMap::Kraus(KrausMap::identity(dim))
    }
}
