//! Property-based invariants over randomized inputs. Matrix-valued cases
//! draw their randomness from a proptest-chosen stream seed so failures
//! shrink to a reproducible seed.

use proptest::prelude::*;

use nosig_core::{
    bloch_to_density, density_to_bloch, measure_alice, partially_entangled, random_channel,
    sample, BlochVector, CMatrix, CloneVariant, DensityMatrix, FunctionFamily, LocalMap, Rng64,
};

fn unit_bloch_strategy() -> impl Strategy<Value = BlochVector> {
    (any::<u64>()).prop_map(|seed| sample::unit_bloch(&mut Rng64::new(seed)))
}

proptest! {
    #[test]
    fn tensor_trace_is_multiplicative(seed in any::<u64>()) {
        let mut rng = Rng64::new(seed);
        let a = sample::random_hermitian(&mut rng, 2);
        let b = sample::random_hermitian(&mut rng, 4);
        let lhs = a.tensor(&b).unwrap().trace();
        let rhs = a.trace() * b.trace();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn tensor_reassociation_is_exact(seed in any::<u64>()) {
        let mut rng = Rng64::new(seed);
        let a = sample::random_complex_matrix(&mut rng, 2, 2);
        let b = sample::random_complex_matrix(&mut rng, 2, 2);
        let c = sample::random_complex_matrix(&mut rng, 2, 2);
        let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
        let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-14);
    }

    #[test]
    fn partial_trace_agrees_with_two_qubit_oracle(seed in any::<u64>()) {
        let mut rng = Rng64::new(seed);
        let m = sample::random_hermitian(&mut rng, 4);
        let over_bob = m.partial_trace(&[2, 2], 1).unwrap();
        let over_alice = m.partial_trace(&[2, 2], 0).unwrap();
        let oracle_bob = CMatrix::from_fn(2, 2, |i, j| m.get(2 * i, 2 * j) + m.get(2 * i + 1, 2 * j + 1));
        let oracle_alice = CMatrix::from_fn(2, 2, |i, j| m.get(i, j) + m.get(2 + i, 2 + j));
        prop_assert!(over_bob.max_abs_diff(&oracle_bob) < 1e-14);
        prop_assert!(over_alice.max_abs_diff(&oracle_alice) < 1e-14);
        prop_assert!((over_bob.trace() - m.trace()).norm() < 1e-12);
    }

    #[test]
    fn eigendecomposition_reconstructs(seed in any::<u64>(), dim_pick in 0usize..4) {
        let dim = [2, 4, 8, 16][dim_pick];
        let mut rng = Rng64::new(seed);
        let m = sample::random_hermitian(&mut rng, dim);
        let (eigenvalues, v) = m.herm_eig().unwrap();
        let recon = v.matmul(&CMatrix::diag(&eigenvalues)).matmul(&v.adjoint());
        prop_assert!(recon.sub(&m).frobenius_norm() < 1e-9);
    }

    #[test]
    fn bloch_roundtrip_is_identity(s in unit_bloch_strategy(), radius in 0.0f64..=1.0) {
        let shrunk = BlochVector::new(s.x * radius, s.y * radius, s.z * radius);
        let rho = bloch_to_density(&shrunk).unwrap();
        let back = density_to_bloch(&rho).unwrap();
        prop_assert!((back.x - shrunk.x).abs() < 1e-12);
        prop_assert!((back.y - shrunk.y).abs() < 1e-12);
        prop_assert!((back.z - shrunk.z).abs() < 1e-12);
    }

    #[test]
    fn measurement_preserves_the_bob_marginal(seed in any::<u64>(), n in unit_bloch_strategy()) {
        let mut rng = Rng64::new(seed);
        let state = sample::random_bipartite(&mut rng);
        let ensemble = measure_alice(&state, &n).unwrap();
        prop_assert!(ensemble.average().max_abs_diff(&state.bob_marginal()) < 1e-12);
        let total: f64 = ensemble.branches().iter().map(|b| b.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn partially_entangled_marginal_diagonal(theta in 0.0f64..=std::f64::consts::FRAC_PI_2) {
        let state = partially_entangled(theta).unwrap();
        let expected = CMatrix::diag(&[theta.cos().powi(2), theta.sin().powi(2)]);
        prop_assert!(state.alice_marginal().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn map_outputs_are_hermitian_unit_trace(
        seed in any::<u64>(),
        eta in -1.5f64..=1.5,
        t in -1.0f64..=1.0,
        f_pick in 0usize..3,
    ) {
        let mut rng = Rng64::new(seed);
        let psi = sample::random_pure_qubit(&mut rng);
        let family = [FunctionFamily::Power(3), FunctionFamily::Square, FunctionFamily::Abs][f_pick];
        let maps = [
            LocalMap::bloch_affine(eta, t),
            LocalMap::bloch_nonlinear(family, t).unwrap(),
            LocalMap::pure_branch(2, (eta.abs() / 1.5).min(1.0), CloneVariant::Mixture).unwrap(),
        ];
        for map in maps {
            let out = map.apply_to_density(&psi).unwrap();
            prop_assert!(out.hermitian_error() < 1e-10);
            prop_assert!((out.trace().re - 1.0).abs() < 1e-10);
            prop_assert!(out.trace().im.abs() < 1e-10);
        }
    }

    #[test]
    fn linear_maps_mix_with_ensembles(seed in any::<u64>(), n in unit_bloch_strategy()) {
        let mut rng = Rng64::new(seed);
        let state = sample::random_bipartite(&mut rng);
        let ensemble = measure_alice(&state, &n).unwrap();
        let avg = DensityMatrix::try_new(ensemble.average().hermitized()).unwrap();
        let maps = [
            LocalMap::bloch_affine(0.8, 0.25),
            LocalMap::Kraus(random_channel(2, 2, 2, seed).unwrap()),
        ];
        for map in maps {
            let branchwise = map.apply_to_ensemble(&ensemble).unwrap();
            let direct = map.apply_to_density(&avg).unwrap();
            prop_assert!(branchwise.max_abs_diff(&direct) < 1e-11);
        }
    }

    #[test]
    fn channels_cannot_signal(seed in any::<u64>(), n1 in unit_bloch_strategy(), n2 in unit_bloch_strategy()) {
        let map = LocalMap::Kraus(random_channel(2, 2, 2, seed).unwrap());
        let mut rng = Rng64::new(seed ^ 0xA5A5);
        let shared = sample::random_bipartite(&mut rng);
        let a = nosig_core::bob_average_state(&shared, &n1, &map).unwrap();
        let b = nosig_core::bob_average_state(&shared, &n2, &map).unwrap();
        prop_assert!(0.5 * a.sub(&b).trace_norm().unwrap() < 1e-10);
    }
}
