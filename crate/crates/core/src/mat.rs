//! Dense complex matrix kernel for systems of one to four qubits.
//!
//! Everything in the crate runs on matrices no larger than 16×16, so the
//! kernel favours directness over asymptotics: row-major storage, textbook
//! O(n³) products, and a cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Index convention, used everywhere: subsystem 0 is the leftmost tensor
//! factor (Alice), so a composite row index decomposes big-endian as
//! (i_a, i_b) with i = i_a·d_b + i_b.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Largest matrix dimension the workspace supports (four qubits).
pub const MAX_DIM: usize = 16;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must equal rows*cols");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real diagonal matrix.
    pub fn diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, Complex64::new(v, 0.0));
        }
        m
    }

    /// Column vector from amplitudes.
    pub fn ket(amplitudes: &[Complex64]) -> Self {
        Self::new(amplitudes.len(), 1, amplitudes.to_vec())
    }

    /// Computational basis column vector |index⟩ in dimension `dim`.
    pub fn basis_ket(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut m = Self::zeros(dim, 1);
        m.set(index, 0, ONE);
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMatrix::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        CMatrix::new(self.rows, self.cols, data)
    }

    pub fn scale(&self, factor: Complex64) -> CMatrix {
        let data = self.data.iter().map(|a| a * factor).collect();
        CMatrix::new(self.rows, self.cols, data)
    }

    pub fn scale_re(&self, factor: f64) -> CMatrix {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch in matmul");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max entrywise |m - m†|; zero for exactly Hermitian matrices.
    pub fn hermitian_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..=i {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.hermitian_error() <= tolerance
    }

    /// Replace m by (m + m†)/2 to strip rounding-level asymmetry.
    pub fn hermitized(&self) -> CMatrix {
        assert!(self.is_square(), "hermitized requires a square matrix");
        CMatrix::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * Complex64::new(0.5, 0.0)
        })
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn validate_finite(&self) -> Result<()> {
        if self.all_finite() {
            Ok(())
        } else {
            Err(Error::contract("matrix contains non-finite entries"))
        }
    }

    /// Outer product a·b† of two column vectors.
    pub fn outer(a: &CMatrix, b: &CMatrix) -> CMatrix {
        assert_eq!(a.cols, 1, "outer expects column vectors");
        assert_eq!(b.cols, 1, "outer expects column vectors");
        CMatrix::from_fn(a.rows, b.rows, |i, j| a.get(i, 0) * b.get(j, 0).conj())
    }

    /// Kronecker product with index convention (i_a i_b, j_a j_b).
    ///
    /// Rejected when the result would exceed the 16×16 workspace.
    pub fn tensor(&self, other: &CMatrix) -> Result<CMatrix> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        if rows > MAX_DIM || cols > MAX_DIM {
            return Err(Error::SizeLimit { rows, cols, max: MAX_DIM });
        }
        let mut out = CMatrix::zeros(rows, cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                if a == ZERO {
                    continue;
                }
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        out.set(ia * other.rows + ib, ja * other.cols + jb, a * other.get(ib, jb));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Trace over tensor factor `traced` of a square matrix whose dimension
    /// factors as the product of `subsystem_dims` (factor 0 leftmost).
    pub fn partial_trace(&self, subsystem_dims: &[usize], traced: usize) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::structure(format!(
                "partial trace requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if subsystem_dims.is_empty() || subsystem_dims.contains(&0) {
            return Err(Error::structure("subsystem dims must be positive"));
        }
        let total: usize = subsystem_dims.iter().product();
        if total != self.rows {
            return Err(Error::structure(format!(
                "subsystem dims {:?} multiply to {}, matrix dimension is {}",
                subsystem_dims, total, self.rows
            )));
        }
        if traced >= subsystem_dims.len() {
            return Err(Error::structure(format!(
                "traced index {} out of range for {} subsystems",
                traced,
                subsystem_dims.len()
            )));
        }

        let out_dim: usize = subsystem_dims
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != traced)
            .map(|(_, &d)| d)
            .product();
        let mut out = CMatrix::zeros(out_dim, out_dim);

        let decompose = |mut idx: usize| -> Vec<usize> {
            let mut digits = vec![0usize; subsystem_dims.len()];
            for k in (0..subsystem_dims.len()).rev() {
                digits[k] = idx % subsystem_dims[k];
                idx /= subsystem_dims[k];
            }
            digits
        };
        let recompose_without = |digits: &[usize]| -> usize {
            let mut idx = 0usize;
            for (k, &d) in subsystem_dims.iter().enumerate() {
                if k == traced {
                    continue;
                }
                idx = idx * d + digits[k];
            }
            idx
        };

        for r in 0..self.rows {
            let rd = decompose(r);
            for c in 0..self.cols {
                let cd = decompose(c);
                if rd[traced] != cd[traced] {
                    continue;
                }
                let ro = recompose_without(&rd);
                let co = recompose_without(&cd);
                let v = out.get(ro, co) + self.get(r, c);
                out.set(ro, co, v);
            }
        }
        Ok(out)
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues in descending order and a unitary whose column j
    /// is the eigenvector for eigenvalue j, so m = V diag(λ) V†.
    pub fn herm_eig(&self) -> Result<(Vec<f64>, CMatrix)> {
        if !self.is_square() {
            return Err(Error::structure(format!(
                "eigendecomposition requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let herm_err = self.hermitian_error();
        if herm_err > tol::HERMITICITY {
            return Err(Error::contract(format!(
                "herm_eig requires a Hermitian matrix (max |m - m†| entry = {herm_err:.3e})"
            )));
        }

        let n = self.rows;
        let mut a = self.hermitized();
        let mut v = CMatrix::identity(n);
        let scale = a.frobenius_norm().max(1.0);

        const MAX_SWEEPS: usize = 60;
        for _ in 0..MAX_SWEEPS {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a.get(p, q).norm_sqr();
                }
            }
            if (2.0 * off).sqrt() <= 1e-14 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q, scale);
                }
            }
        }

        let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a.get(i, i).re, i)).collect();
        pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());

        let eigenvalues: Vec<f64> = pairs.iter().map(|&(lam, _)| lam).collect();
        let vectors = CMatrix::from_fn(n, n, |i, j| v.get(i, pairs[j].1));
        Ok((eigenvalues, vectors))
    }

    /// Sum of absolute eigenvalues of a Hermitian matrix.
    pub fn trace_norm(&self) -> Result<f64> {
        let (eigenvalues, _) = self.herm_eig().map_err(|e| match e {
            Error::Contract(_) => {
                Error::contract("trace_norm is defined here for Hermitian matrices only")
            }
            other => other,
        })?;
        Ok(eigenvalues.iter().map(|l| l.abs()).sum())
    }

    /// Smallest eigenvalue of a Hermitian matrix.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let (eigenvalues, _) = self.herm_eig()?;
        Ok(*eigenvalues.last().expect("non-empty spectrum"))
    }
}

/// One Jacobi rotation zeroing the (p, q) entry of the Hermitian matrix `a`,
/// with the same unitary accumulated into `v`.
fn jacobi_rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, scale: f64) {
    let beta = a.get(p, q);
    let b = beta.norm();
    if b <= 1e-300 || b <= 1e-18 * scale {
        return;
    }
    let phase = beta / b;
    let alpha = a.get(p, p).re;
    let gamma = a.get(q, q).re;

    // Zero b(c²-s²) + (γ-α)cs via t = tanθ, picking the |t| ≤ 1 root.
    let tau = (gamma - alpha) / (2.0 * b);
    let t = if tau >= 0.0 {
        -1.0 / (tau + (tau * tau + 1.0).sqrt())
    } else {
        1.0 / (-tau + (tau * tau + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.rows();
    let cs = Complex64::new(c, 0.0);
    let s_phase = phase * s; //  s·e^{iφ}
    let s_phase_conj = s_phase.conj();

    // A <- R† A R, touching only rows/cols p and q.
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, cs * akp + s_phase_conj * akq);
        a.set(k, q, -s_phase * akp + cs * akq);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, cs * apk + s_phase * aqk);
        a.set(q, k, -s_phase_conj * apk + cs * aqk);
    }
    let app = Complex64::new(a.get(p, p).re, 0.0);
    let aqq = Complex64::new(a.get(q, q).re, 0.0);
    a.set(p, p, app);
    a.set(q, q, aqq);
    a.set(p, q, ZERO);
    a.set(q, p, ZERO);

    // V <- V R.
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, cs * vkp + s_phase_conj * vkq);
        v.set(k, q, -s_phase * vkp + cs * vkq);
    }
}

/// Pauli x matrix.
pub fn pauli_x() -> CMatrix {
    CMatrix::new(2, 2, vec![ZERO, ONE, ONE, ZERO])
}

/// Pauli y matrix.
pub fn pauli_y() -> CMatrix {
    CMatrix::new(
        2,
        2,
        vec![ZERO, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), ZERO],
    )
}

/// Pauli z matrix.
pub fn pauli_z() -> CMatrix {
    CMatrix::new(2, 2, vec![ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0)])
}

/// The three Pauli matrices in (x, y, z) order.
pub fn paulis() -> [CMatrix; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}
