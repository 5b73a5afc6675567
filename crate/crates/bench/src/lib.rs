//! Shared fixtures for the criterion benchmarks.

use nosig_core::{sample, CMatrix, Rng64};

/// Deterministic Hermitian matrices, one per dimension in `dims`.
pub fn hermitian_fixtures(dims: &[usize], seed: u64) -> Vec<CMatrix> {
    let mut rng = Rng64::new(seed);
    dims.iter().map(|&d| sample::random_hermitian(&mut rng, d)).collect()
}
