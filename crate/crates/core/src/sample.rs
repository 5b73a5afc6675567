//! Seeded random generators for states, operators, and sphere directions.
//!
//! Everything here is deterministic per seed and independent of platform:
//! a SplitMix64 stream feeds Box-Muller gaussians, and all higher-level
//! objects are built from those. Callers that parallelize must pre-draw
//! their sample lists so results stay schedule-independent.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat::CMatrix;
use crate::states::{BipartiteState, BlochVector, DensityMatrix};

/// SplitMix64 pseudo-random stream. Not cryptographic; used only to make
/// sampling reproducible bit-for-bit per seed.
#[derive(Debug, Clone)]
pub struct Rng64 {
    state: u64,
}

impl Rng64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard gaussian via Box-Muller.
    pub fn next_gaussian(&mut self) -> f64 {
        let mut u1 = self.next_f64();
        if u1 < 1e-300 {
            u1 = 1e-300;
        }
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn next_complex_gaussian(&mut self) -> Complex64 {
        Complex64::new(self.next_gaussian(), self.next_gaussian())
    }

    /// Uniform integer in [0, bound).
    pub fn next_below(&mut self, bound: usize) -> usize {
        (self.next_f64() * bound as f64) as usize % bound
    }
}

/// Uniform direction on the sphere from a normalized gaussian triple.
pub fn unit_bloch(rng: &mut Rng64) -> BlochVector {
    loop {
        let v = BlochVector::new(rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian());
        let n = v.norm();
        if n > 1e-6 {
            return BlochVector::new(v.x / n, v.y / n, v.z / n);
        }
    }
}

/// Uniformly random pure qubit state.
pub fn random_pure_qubit(rng: &mut Rng64) -> DensityMatrix {
    let s = unit_bloch(rng);
    crate::states::bloch_to_density(&s).expect("unit Bloch vector is always valid")
}

/// Random matrix with independent complex gaussian entries.
pub fn random_complex_matrix(rng: &mut Rng64, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| rng.next_complex_gaussian())
}

/// Random Hermitian matrix (G + G†)/2 with gaussian G.
pub fn random_hermitian(rng: &mut Rng64, dim: usize) -> CMatrix {
    random_complex_matrix(rng, dim, dim).hermitized()
}

/// Random density matrix G G†/Tr(G G†) (Hilbert-Schmidt ensemble).
pub fn random_density(rng: &mut Rng64, dim: usize) -> DensityMatrix {
    let g = random_complex_matrix(rng, dim, dim);
    let positive = g.matmul(&g.adjoint());
    let normalized = positive.scale_re(1.0 / positive.trace().re);
    DensityMatrix::try_new(normalized).expect("normalized G G† is a valid state")
}

/// Random two-qubit mixed state.
pub fn random_bipartite(rng: &mut Rng64) -> BipartiteState {
    BipartiteState::try_new(random_density(rng, 4)).expect("dimension 4 by construction")
}

/// Random pure state vector in the given dimension.
pub fn random_ket(rng: &mut Rng64, dim: usize) -> CMatrix {
    loop {
        let v = random_complex_matrix(rng, dim, 1);
        let norm = v.frobenius_norm();
        if norm > 1e-6 {
            return v.scale_re(1.0 / norm);
        }
    }
}

/// Isometry with orthonormal columns, from Gram-Schmidt on gaussian vectors.
///
/// Requires rows ≥ cols.
pub fn random_isometry(rng: &mut Rng64, rows: usize, cols: usize) -> Result<CMatrix> {
    if rows < cols {
        return Err(Error::contract(format!(
            "an isometry needs at least as many rows as columns, got {rows}x{cols}"
        )));
    }
    let mut columns: Vec<CMatrix> = Vec::with_capacity(cols);
    while columns.len() < cols {
        let mut v = random_complex_matrix(rng, rows, 1);
        for u in &columns {
            let overlap = u.adjoint().matmul(&v).get(0, 0);
            v = v.sub(&u.scale(overlap));
        }
        let norm = v.frobenius_norm();
        if norm > 1e-8 {
            columns.push(v.scale_re(1.0 / norm));
        }
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| columns[j].get(i, 0)))
}

/// Random unitary matrix.
pub fn random_unitary(rng: &mut Rng64, dim: usize) -> CMatrix {
    random_isometry(rng, dim, dim).expect("square isometry always constructible")
}

/// Trace-preserving CP map: an isometry of shape (d_out·rank)×d_in sliced
/// into `rank` Kraus operators, so Σ K†K = V†V = I by construction.
pub fn random_kraus(
    rng: &mut Rng64,
    d_in: usize,
    d_out: usize,
    rank: usize,
) -> Result<crate::maps::KrausMap> {
    let isometry = random_isometry(rng, d_out * rank, d_in)?;
    let ops: Vec<CMatrix> = (0..rank)
        .map(|r| CMatrix::from_fn(d_out, d_in, |i, j| isometry.get(r * d_out + i, j)))
        .collect();
    crate::maps::KrausMap::try_new(ops)
}

/// Trace-preserving Hermiticity-preserving linear map that need not be
/// positive: a random channel plus a traceless-output perturbation
/// X ↦ Σ_j Tr(X G_j)·H_j with Hermitian G_j and traceless Hermitian H_j.
pub fn random_tp_hermitian_transfer(
    rng: &mut Rng64,
    dim: usize,
    strength: f64,
) -> Result<crate::maps::TransferMap> {
    let channel = random_kraus(rng, dim, dim, 2)?;
    let base = crate::maps::TransferMap::from_kraus(&channel);
    let mut super_mat = base.super_mat().clone();
    for _ in 0..2 {
        let g = random_hermitian(rng, dim);
        let mut h = random_hermitian(rng, dim).scale_re(strength);
        let shift = h.trace().re / dim as f64;
        h = h.sub(&CMatrix::identity(dim).scale_re(shift));
        // Column (k + l·dim) of the perturbation supermatrix holds
        // vec(Tr(E_kl G)·H) = G[l,k]·vec(H).
        for k in 0..dim {
            for l in 0..dim {
                let coeff = g.get(l, k);
                for i in 0..dim {
                    for j in 0..dim {
                        let row = i + j * dim;
                        let col = k + l * dim;
                        let v = super_mat.get(row, col) + coeff * h.get(i, j);
                        super_mat.set(row, col, v);
                    }
                }
            }
        }
    }
    crate::maps::TransferMap::try_new(super_mat)
}

/// Random POVM with `elements` outcomes on dimension `dim`:
/// A_k = G_k G_k†, then Π_k = S^{-1/2} A_k S^{-1/2} with S = Σ A_k.
pub fn random_povm(rng: &mut Rng64, dim: usize, elements: usize) -> Vec<CMatrix> {
    assert!(elements >= 2, "a POVM needs at least two elements");
    let parts: Vec<CMatrix> = (0..elements)
        .map(|_| {
            let g = random_complex_matrix(rng, dim, dim);
            g.matmul(&g.adjoint())
        })
        .collect();
    let mut total = CMatrix::zeros(dim, dim);
    for p in &parts {
        total = total.add(p);
    }
    let (eigenvalues, v) = total.herm_eig().expect("sum of G G† is Hermitian");
    let inv_sqrt_diag: Vec<f64> = eigenvalues.iter().map(|l| 1.0 / l.max(1e-300).sqrt()).collect();
    let inv_sqrt = v
        .matmul(&CMatrix::diag(&inv_sqrt_diag))
        .matmul(&v.adjoint());
    parts
        .iter()
        .map(|p| inv_sqrt.matmul(p).matmul(&inv_sqrt).hermitized())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_is_deterministic() {
        let mut a = Rng64::new(99);
        let mut b = Rng64::new(99);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn gaussians_have_sane_moments() {
        let mut rng = Rng64::new(7);
        let n = 20_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let g = rng.next_gaussian();
            sum += g;
            sum_sq += g * g;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.05, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "variance {var}");
    }

    #[test]
    fn unit_bloch_is_unit_and_covers_octants() {
        let mut rng = Rng64::new(3);
        let mut octants = [false; 8];
        for _ in 0..200 {
            let v = unit_bloch(&mut rng);
            assert!((v.norm() - 1.0).abs() < 1e-12);
            let idx = (v.x > 0.0) as usize * 4 + (v.y > 0.0) as usize * 2 + (v.z > 0.0) as usize;
            octants[idx] = true;
        }
        assert!(octants.iter().all(|&b| b));
    }

    #[test]
    fn random_isometry_has_orthonormal_columns() {
        let mut rng = Rng64::new(12);
        for &(rows, cols) in &[(2usize, 2usize), (4, 2), (8, 2), (4, 4)] {
            let v = random_isometry(&mut rng, rows, cols).unwrap();
            let gram = v.adjoint().matmul(&v);
            assert!(gram.max_abs_diff(&CMatrix::identity(cols)) < 1e-12);
        }
    }

    #[test]
    fn random_povm_sums_to_identity() {
        let mut rng = Rng64::new(21);
        for &dim in &[2usize, 4] {
            let povm = random_povm(&mut rng, dim, 3);
            let mut total = CMatrix::zeros(dim, dim);
            for p in &povm {
                assert!(p.min_eigenvalue().unwrap() > -1e-10);
                total = total.add(p);
            }
            assert!(total.max_abs_diff(&CMatrix::identity(dim)) < 1e-10);
        }
    }
}
