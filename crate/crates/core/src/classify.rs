//! Decide where a local map sits in the taxonomy of local maps (linear?,
//! trace-preserving?, positive?, completely positive?) and collect numeric
//! evidence for each verdict.
//!
//! Region labels follow the diagram the example suite reproduces: `QM` for
//! linear trace-preserving CP maps, `LINEAR_NONPOSITIVE_NOSIGNAL` for linear
//! trace-preserving maps that fail complete positivity (lawless but still
//! unable to signal), `NONLINEAR` for maps that depend on how a mixture is
//! decomposed, and `NOT_TRACE_PRESERVING` which overrides everything else.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat::{self, CMatrix};
use crate::maps::LocalMap;
use crate::sample::{self, Rng64};
use crate::states::{BlochVector, Branch, ConditionalEnsemble, DensityMatrix};
use crate::tol;
use crate::DEFAULT_SEED;

/// Region label in the local-map taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    #[serde(rename = "QM")]
    Qm,
    #[serde(rename = "LINEAR_NONPOSITIVE_NOSIGNAL")]
    LinearNonpositiveNosignal,
    #[serde(rename = "NONLINEAR")]
    Nonlinear,
    #[serde(rename = "NOT_TRACE_PRESERVING")]
    NotTracePreserving,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let label = match self {
            Region::Qm => "QM",
            Region::LinearNonpositiveNosignal => "LINEAR_NONPOSITIVE_NOSIGNAL",
            Region::Nonlinear => "NONLINEAR",
            Region::NotTracePreserving => "NOT_TRACE_PRESERVING",
        };
        f.write_str(label)
    }
}

/// Full classification verdict with the numeric evidence behind each flag.
#[derive(Debug, Clone, Serialize)]
pub struct MapClassification {
    pub is_linear: bool,
    /// Largest branch-output deviation (trace norm) seen across
    /// decomposition pairs.
    pub linearity_deviation: f64,
    pub is_trace_preserving: bool,
    pub trace_deviation: f64,
    pub is_positive: bool,
    /// Most negative output eigenvalue found while sampling pure inputs.
    pub min_output_eigenvalue: f64,
    /// The input that produced `min_output_eigenvalue`.
    pub positivity_witness: BlochVector,
    /// None for nonlinear maps, where complete positivity is undefined.
    pub is_completely_positive: Option<bool>,
    pub min_choi_eigenvalue: Option<f64>,
    pub region: Region,
}

/// Choi matrix J = Σ_ij L(|i⟩⟨j|) ⊗ |i⟩⟨j| of a linear map (unnormalized).
/// The map is CP iff J is PSD, and trace-preserving iff tracing out the
/// output factor of J leaves the identity.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    mat: CMatrix,
    d_in: usize,
    d_out: usize,
}

impl ChoiMatrix {
    pub fn mat(&self) -> &CMatrix {
        &self.mat
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        self.mat.min_eigenvalue()
    }

    pub fn is_cp(&self) -> Result<bool> {
        Ok(self.min_eigenvalue()? >= -tol::PSD_MAP)
    }

    /// Tr over the output factor; equals I_{d_in} exactly when the map is
    /// trace preserving.
    pub fn trace_out_output(&self) -> CMatrix {
        self.mat
            .partial_trace(&[self.d_out, self.d_in], 0)
            .expect("Choi dimensions are consistent by construction")
    }

    pub fn trace_preservation_deviation(&self) -> f64 {
        self.trace_out_output()
            .max_abs_diff(&CMatrix::identity(self.d_in))
    }
}

/// Build the Choi matrix of a linear map representation.
///
/// Nonlinear representations are rejected: their action on matrix units is
/// undefined.
pub fn choi_matrix(map: &LocalMap) -> Result<ChoiMatrix> {
    if !map.is_linear_rep() {
        return Err(Error::contract(
            "Choi matrix is defined for the linear representations only",
        ));
    }
    let d_in = map.d_in();
    let d_out = map.d_out();
    let dim = d_in * d_out;
    if dim > mat::MAX_DIM {
        return Err(Error::SizeLimit { rows: dim, cols: dim, max: mat::MAX_DIM });
    }
    let mut j = CMatrix::zeros(dim, dim);
    for i in 0..d_in {
        for k in 0..d_in {
            let mut unit = CMatrix::zeros(d_in, d_in);
            unit.set(i, k, mat::ONE);
            let image = map.apply_linear(&unit)?;
            let block = image.tensor(&unit)?;
            j = j.add(&block);
        }
    }
    Ok(ChoiMatrix { mat: j, d_in, d_out })
}

/// Seeded trace-preserving CP map: a gaussian matrix is orthonormalized
/// into an isometry of shape (d_out·kraus_rank)×d_in and sliced into
/// `kraus_rank` Kraus operators. Deterministic per seed.
pub fn random_channel(
    d_in: usize,
    d_out: usize,
    kraus_rank: usize,
    seed: u64,
) -> Result<crate::maps::KrausMap> {
    if kraus_rank == 0 {
        return Err(Error::domain("kraus_rank must be at least 1"));
    }
    let mut rng = Rng64::new(seed);
    sample::random_kraus(&mut rng, d_in, d_out, kraus_rank)
}

/// Linearity test. The linear representations are linear by construction
/// and get a numeric spot-check; the pure-state-defined maps are probed
/// through ensemble ambiguity: pairs of distinct pure-state decompositions
/// of the same density matrix must produce the same branch-averaged output.
///
/// Returns the verdict and the largest trace-norm deviation observed.
pub fn test_linearity(map: &LocalMap, trials: usize) -> Result<(bool, f64)> {
    test_linearity_seeded(map, trials, DEFAULT_SEED)
}

pub fn test_linearity_seeded(map: &LocalMap, trials: usize, seed: u64) -> Result<(bool, f64)> {
    if trials == 0 {
        return Err(Error::domain("linearity test needs at least one trial"));
    }
    if map.d_in() != 2 {
        return Err(Error::structure(
            "linearity is probed on single-qubit inputs in this workspace",
        ));
    }
    let mut rng = Rng64::new(seed);
    let mut max_dev = 0.0f64;

    let effective_trials = if map.is_linear_rep() {
        trials.min(4)
    } else {
        trials
    };

    // Canonical pair: I/2 as a z-mixture vs an x-mixture.
    let z_pair = axis_decomposition(&BlochVector::Z)?;
    let x_pair = axis_decomposition(&BlochVector::X)?;
    let dev = ensemble_output_distance(map, &z_pair, &x_pair)?;
    max_dev = max_dev.max(dev);

    for trial in 1..effective_trials {
        // Full-rank target state, decomposed two different ways. Ensembles
        // alternate between 2 and 3 elements so that both even- and
        // odd-symmetric nonlinearity is exposed.
        let target = mixed_full_rank(&mut rng);
        let elements = if trial % 2 == 0 { 2 } else { 3 };
        let first = hjw_decomposition(&target, elements, &mut rng)?;
        let second = hjw_decomposition(&target, elements, &mut rng)?;
        let dev = ensemble_output_distance(map, &first, &second)?;
        max_dev = max_dev.max(dev);
    }
    Ok((max_dev <= tol::LINEARITY, max_dev))
}

fn ensemble_output_distance(
    map: &LocalMap,
    a: &ConditionalEnsemble,
    b: &ConditionalEnsemble,
) -> Result<f64> {
    let out_a = map.apply_to_ensemble(a)?;
    let out_b = map.apply_to_ensemble(b)?;
    out_a.sub(&out_b).trace_norm()
}

/// I/2 as an equal mixture of the two pure states along ±axis.
fn axis_decomposition(axis: &BlochVector) -> Result<ConditionalEnsemble> {
    let up = crate::states::bloch_to_density(axis)?;
    let down = crate::states::bloch_to_density(&axis.neg())?;
    ConditionalEnsemble::try_new(vec![
        Branch { probability: 0.5, state: Some(up) },
        Branch { probability: 0.5, state: Some(down) },
    ])
}

fn mixed_full_rank(rng: &mut Rng64) -> DensityMatrix {
    let raw = sample::random_density(rng, 2);
    let blended = raw
        .mat()
        .scale_re(0.75)
        .add(&CMatrix::identity(2).scale_re(0.125));
    DensityMatrix::try_new(blended).expect("blend with I/2 keeps full rank")
}

/// Random pure-state decomposition of a single-qubit density matrix with
/// the requested number of elements, via unitary mixing of the weighted
/// eigenvectors.
fn hjw_decomposition(
    rho: &DensityMatrix,
    elements: usize,
    rng: &mut Rng64,
) -> Result<ConditionalEnsemble> {
    let (eigenvalues, vectors) = rho.mat().herm_eig()?;
    let rank = eigenvalues.len();
    let u = sample::random_unitary(rng, elements.max(rank));
    let mut branches = Vec::with_capacity(elements);
    for j in 0..elements {
        let mut ket = CMatrix::zeros(rho.dim(), 1);
        for (k, lam) in eigenvalues.iter().enumerate() {
            let weight = u.get(j, k) * num_complex::Complex64::new(lam.max(0.0).sqrt(), 0.0);
            for r in 0..rho.dim() {
                let v = ket.get(r, 0) + weight * vectors.get(r, k);
                ket.set(r, 0, v);
            }
        }
        let q = ket.frobenius_norm().powi(2);
        if q < tol::ZERO_PROBABILITY {
            branches.push(Branch { probability: q.max(0.0), state: None });
        } else {
            branches.push(Branch {
                probability: q,
                state: Some(DensityMatrix::from_ket(&ket)?),
            });
        }
    }
    ConditionalEnsemble::try_new(branches)
}

/// Trace-preservation test over random valid inputs. Returns the verdict
/// and the largest |Tr(output) − 1| seen.
pub fn test_trace_preservation(map: &LocalMap, trials: usize) -> Result<(bool, f64)> {
    test_trace_preservation_seeded(map, trials, DEFAULT_SEED)
}

pub fn test_trace_preservation_seeded(
    map: &LocalMap,
    trials: usize,
    seed: u64,
) -> Result<(bool, f64)> {
    if trials == 0 {
        return Err(Error::domain("trace-preservation test needs at least one trial"));
    }
    let mut rng = Rng64::new(seed);
    let mut max_dev = 0.0f64;
    for _ in 0..trials {
        let input = random_valid_input(map, &mut rng);
        let out = map.apply_to_density(&input)?;
        max_dev = max_dev.max((out.trace() - mat::ONE).norm());
    }
    Ok((max_dev <= tol::TRACE_PRESERVATION, max_dev))
}

fn random_valid_input(map: &LocalMap, rng: &mut Rng64) -> DensityMatrix {
    let want_pure =
        map.is_pure_state_defined() || (map.d_in() == 2 && rng.next_f64() < 0.5);
    if want_pure {
        sample::random_pure_qubit(rng)
    } else {
        sample::random_density(rng, map.d_in())
    }
}

/// Positivity test: smallest output eigenvalue over `samples` uniform pure
/// inputs plus the six axis states. Positive means min ≥ −1e-9.
///
/// Returns (verdict, most negative eigenvalue, worst input found).
pub fn test_positivity(map: &LocalMap, samples: usize) -> Result<(bool, f64, BlochVector)> {
    test_positivity_seeded(map, samples, DEFAULT_SEED)
}

pub fn test_positivity_seeded(
    map: &LocalMap,
    samples: usize,
    seed: u64,
) -> Result<(bool, f64, BlochVector)> {
    if samples < 100 {
        return Err(Error::domain("positivity test needs at least 100 samples"));
    }
    if map.d_in() != 2 {
        return Err(Error::structure(
            "positivity sampling covers single-qubit input maps only",
        ));
    }
    let mut rng = Rng64::new(seed);
    let mut inputs = vec![
        BlochVector::X,
        BlochVector::X.neg(),
        BlochVector::Y,
        BlochVector::Y.neg(),
        BlochVector::Z,
        BlochVector::Z.neg(),
    ];
    inputs.extend((0..samples).map(|_| sample::unit_bloch(&mut rng)));

    let mut min_eig = f64::INFINITY;
    let mut witness = BlochVector::Z;
    for s in inputs {
        let rho = crate::states::bloch_to_density(&s)?;
        let out = map.apply_to_density(&rho)?;
        let eig = out.min_eigenvalue()?;
        if eig < min_eig {
            min_eig = eig;
            witness = s;
        }
    }
    Ok((min_eig >= -tol::PSD_MAP, min_eig, witness))
}

/// Run the four tests and assign the region label.
pub fn classify_map(map: &LocalMap) -> Result<MapClassification> {
    classify_map_seeded(map, DEFAULT_SEED)
}

pub fn classify_map_seeded(map: &LocalMap, seed: u64) -> Result<MapClassification> {
    classify_map_with(map, seed, 500)
}

/// Like [`classify_map_seeded`] with a caller-chosen positivity sample
/// count (at least 100).
pub fn classify_map_with(
    map: &LocalMap,
    seed: u64,
    positivity_samples: usize,
) -> Result<MapClassification> {
    let (is_linear, linearity_deviation) = test_linearity_seeded(map, 40, seed)?;
    let (is_trace_preserving, trace_deviation) = test_trace_preservation_seeded(map, 40, seed)?;
    let (is_positive, min_output_eigenvalue, positivity_witness) =
        test_positivity_seeded(map, positivity_samples, seed)?;

    let (is_completely_positive, min_choi_eigenvalue) = if map.is_linear_rep() {
        let choi = choi_matrix(map)?;
        let min_eig = choi.min_eigenvalue()?;
        (Some(min_eig >= -tol::PSD_MAP), Some(min_eig))
    } else {
        (None, None)
    };

    let region = if !is_trace_preserving {
        Region::NotTracePreserving
    } else if !is_linear {
        Region::Nonlinear
    } else if is_completely_positive == Some(true) {
        Region::Qm
    } else {
        Region::LinearNonpositiveNosignal
    };

    Ok(MapClassification {
        is_linear,
        linearity_deviation,
        is_trace_preserving,
        trace_deviation,
        is_positive,
        min_output_eigenvalue,
        positivity_witness,
        is_completely_positive,
        min_choi_eigenvalue,
        region,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{CloneVariant, FunctionFamily, TransferMap};

    #[test]
    fn kraus_maps_are_linear() {
        let map = LocalMap::Kraus(random_channel(2, 2, 2, 7).unwrap());
        let (linear, dev) = test_linearity(&map, 10).unwrap();
        assert!(linear);
        assert!(dev < 1e-12);
    }

    #[test]
    fn pure_branch_fails_linearity_via_basis_ambiguity() {
        let map = LocalMap::pure_branch(2, 1.0, CloneVariant::Mixture).unwrap();
        let (linear, dev) = test_linearity(&map, 10).unwrap();
        assert!(!linear);
        assert!(dev > 1e-3, "deviation {dev}");
    }

    #[test]
    fn even_function_fails_linearity() {
        let map = LocalMap::bloch_nonlinear(FunctionFamily::Square, 0.0).unwrap();
        let (linear, dev) = test_linearity(&map, 10).unwrap();
        assert!(!linear);
        assert!(dev > 1e-3, "deviation {dev}");
    }

    #[test]
    fn odd_function_is_still_nonlinear() {
        // Power-3 passes the antipodal I/2 check but a three-element
        // decomposition exposes it.
        let map = LocalMap::bloch_nonlinear(FunctionFamily::Power(3), 0.0).unwrap();
        let (linear, dev) = test_linearity(&map, 20).unwrap();
        assert!(!linear);
        assert!(dev > 1e-4, "deviation {dev}");
    }

    #[test]
    fn trace_preservation_verdicts() {
        let affine = LocalMap::bloch_affine(1.4, -0.8);
        let (tp, dev) = test_trace_preservation(&affine, 20).unwrap();
        assert!(tp, "deviation {dev}");

        let cloner = LocalMap::pure_branch(3, 0.4, CloneVariant::Factorized).unwrap();
        let (tp, _) = test_trace_preservation(&cloner, 20).unwrap();
        assert!(tp);

        let shrunk = LocalMap::Transfer(
            TransferMap::from_kraus(&random_channel(2, 2, 2, 3).unwrap()).scale(0.9),
        );
        let (tp, dev) = test_trace_preservation(&shrunk, 20).unwrap();
        assert!(!tp);
        assert!((dev - 0.1).abs() < 1e-9, "deviation {dev}");
    }

    #[test]
    fn positivity_verdicts_across_the_eta_boundary() {
        let (positive, min_eig, _) =
            test_positivity(&LocalMap::bloch_affine(0.7, 1.0 / 3.0), 200).unwrap();
        assert!(!positive);
        assert!(min_eig < -1e-3);

        let (positive, min_eig, _) =
            test_positivity(&LocalMap::bloch_affine(2.0 / 3.0, 1.0 / 3.0), 200).unwrap();
        assert!(positive, "boundary case, min eigenvalue {min_eig:.3e}");

        let channel = LocalMap::Kraus(random_channel(2, 2, 3, 11).unwrap());
        let (positive, _, _) = test_positivity(&channel, 200).unwrap();
        assert!(positive);
    }

    #[test]
    fn positivity_witness_points_at_a_violation() {
        let map = LocalMap::bloch_affine(0.9, 1.0 / 3.0);
        let (_, min_eig, witness) = test_positivity(&map, 300).unwrap();
        let rho = crate::states::bloch_to_density(&witness).unwrap();
        let eig = map.apply_to_density(&rho).unwrap().min_eigenvalue().unwrap();
        assert!((eig - min_eig).abs() < 1e-12);
        assert!(eig < -1e-3);
    }

    #[test]
    fn choi_of_identity_channel() {
        let map = LocalMap::identity_channel(2);
        let choi = choi_matrix(&map).unwrap();
        let (eigenvalues, _) = choi.mat().herm_eig().unwrap();
        assert!((eigenvalues[0] - 2.0).abs() < 1e-12);
        for l in &eigenvalues[1..] {
            assert!(l.abs() < 1e-12);
        }
        // J = 2|Ω⟩⟨Ω| with Ω = (|00⟩ + |11⟩)/√2.
        let mut omega = CMatrix::zeros(4, 1);
        omega.set(0, 0, mat::ONE);
        omega.set(3, 0, mat::ONE);
        let omega = omega.scale_re(std::f64::consts::FRAC_1_SQRT_2);
        let expected = CMatrix::outer(&omega, &omega).scale_re(2.0);
        assert!(choi.mat().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn choi_detects_the_cp_boundary() {
        let lawful = choi_matrix(&LocalMap::bloch_affine(2.0 / 3.0, 1.0 / 3.0)).unwrap();
        assert!(lawful.min_eigenvalue().unwrap() >= -tol::PSD_MAP);

        let unlawful = choi_matrix(&LocalMap::bloch_affine(0.8, 1.0 / 3.0)).unwrap();
        assert!(unlawful.min_eigenvalue().unwrap() < -1e-3);
    }

    #[test]
    fn choi_rejects_nonlinear_maps() {
        let map = LocalMap::pure_branch(2, 0.5, CloneVariant::Mixture).unwrap();
        assert!(matches!(choi_matrix(&map).unwrap_err(), Error::Contract(_)));
    }

    #[test]
    fn random_channel_properties() {
        for seed in 0..20u64 {
            let channel = random_channel(2, 2, 2, seed).unwrap();
            let choi = choi_matrix(&LocalMap::Kraus(channel)).unwrap();
            assert!(choi.is_cp().unwrap());
            assert!(choi.trace_preservation_deviation() < 1e-9);
        }
        // Rank 1 gives a unitary channel.
        let unitary = random_channel(2, 2, 1, 5).unwrap();
        let k = &unitary.ops()[0];
        assert!(k.adjoint().matmul(k).max_abs_diff(&CMatrix::identity(2)) < 1e-12);

        // Determinism per seed.
        let a = random_channel(2, 4, 3, 123).unwrap();
        let b = random_channel(2, 4, 3, 123).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn classify_the_example_maps() {
        let report = classify_map(&LocalMap::bloch_affine(0.7, 1.0 / 3.0)).unwrap();
        assert_eq!(report.region, Region::LinearNonpositiveNosignal);
        assert!(!report.is_positive);
        assert!(report.min_output_eigenvalue < -1e-3);
        assert_eq!(report.is_completely_positive, Some(false));

        let report =
            classify_map(&LocalMap::pure_branch(2, 0.9, CloneVariant::Mixture).unwrap()).unwrap();
        assert_eq!(report.region, Region::Nonlinear);
        assert_eq!(report.is_completely_positive, None);

        let report = classify_map(&LocalMap::Kraus(random_channel(2, 2, 2, 17).unwrap())).unwrap();
        assert_eq!(report.region, Region::Qm);
        assert!(report.is_positive);

        let report = classify_map(&LocalMap::Transfer(
            TransferMap::from_kraus(&random_channel(2, 2, 2, 18).unwrap()).scale(0.8),
        ))
        .unwrap();
        assert_eq!(report.region, Region::NotTracePreserving);
    }

    #[test]
    fn cp_implies_positive_for_random_channels() {
        for seed in 0..100u64 {
            let map = LocalMap::Kraus(random_channel(2, 2, 1 + (seed as usize % 4), seed).unwrap());
            let (positive, min_eig, _) = test_positivity(&map, 100).unwrap();
            assert!(positive, "seed {seed}: min output eigenvalue {min_eig:.3e}");
        }
    }

    #[test]
    fn choi_tp_test_agrees_with_sampled_tp_test() {
        let mut rng = Rng64::new(314);
        for trial in 0..1000usize {
            let base = sample::random_tp_hermitian_transfer(&mut rng, 2, 0.4).unwrap();
            // Half the population is rescaled into trace-preservation
            // violations of varying size.
            let map = if trial % 2 == 0 {
                base
            } else {
                base.scale(1.0 + (rng.next_f64() - 0.5) * 0.2)
            };
            let choi = choi_matrix(&LocalMap::Transfer(map.clone())).unwrap();
            let choi_tp = choi.trace_preservation_deviation() < 1e-9;
            let (sampled_tp, dev) =
                test_trace_preservation_seeded(&LocalMap::Transfer(map), 30, trial as u64).unwrap();
            // Both routes must agree except inside a narrow indifference
            // band around the threshold.
            if dev > 1e-8 || choi.trace_preservation_deviation() > 1e-8 {
                assert_eq!(choi_tp, sampled_tp, "trial {trial}: dev {dev:.3e}");
            }
        }
    }

    #[test]
    fn eta_t_grid_matches_the_boundary_condition() {
        // On t ∈ [0, 1/3] the positivity region is exactly η ≤ (1+t)/2; a
        // 1e-3 band around the boundary is excluded from the comparison.
        let cells = 20;
        for i in 0..cells {
            for j in 0..cells {
                let eta = (i as f64 + 0.5) / cells as f64;
                let t = (j as f64 + 0.5) / cells as f64 / 3.0;
                let margin = (1.0 + t) / 2.0 - eta;
                if margin.abs() <= 1e-3 {
                    continue;
                }
                let map = LocalMap::bloch_affine(eta, t);
                let (positive, min_eig, _) = test_positivity(&map, 100).unwrap();
                assert_eq!(
                    positive,
                    margin > 0.0,
                    "η={eta:.3}, t={t:.3}: min eigenvalue {min_eig:.3e}"
                );
            }
        }
    }

    #[test]
    fn nonlinear_family_is_nonpositive_when_f_at_one_clears_the_boundary() {
        // Same mechanism as the affine boundary: a pole input gives the
        // output eigenvalue (1 + t - 2·f(1))/4, negative whenever
        // f(1) > (1+t)/2. All built-in families have f(1) = 1.
        for t in [0.0, 0.2] {
            let map = LocalMap::bloch_nonlinear(FunctionFamily::Square, t).unwrap();
            let (positive, min_eig, _) = test_positivity(&map, 100).unwrap();
            assert!(!positive);
            assert!(min_eig <= (1.0 + t - 2.0) / 4.0 + 1e-12, "t={t}: {min_eig}");
        }
    }

    #[test]
    fn large_t_is_nonpositive_regardless_of_eta() {
        // Above t = 1/3 the singlet-component eigenvalue (1-3t)/4 goes
        // negative on every pure input, independent of η.
        for t in [0.4, 0.7, 1.0] {
            for eta in [0.0, 0.3, (1.0 + t) / 2.0 - 0.05] {
                let (positive, min_eig, _) =
                    test_positivity(&LocalMap::bloch_affine(eta, t), 100).unwrap();
                assert!(!positive, "η={eta}, t={t}");
                assert!((min_eig - (1.0 - 3.0 * t) / 4.0).abs() < 1e-9);
            }
        }
    }
}
