//! Cloning quality of Bob's maps: per-input and Monte-Carlo average
//! single-clone fidelities, compared against the 5/6 optimum for universal
//! 1→2 cloning.
//!
//! The point the joint {fidelity, signalling} tables make: beating 5/6 and
//! being able to signal are independent properties. The linear non-positive
//! clone map beats the bound and cannot signal; the pure-branch cloner can
//! signal at any fidelity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::LocalMap;
use crate::sample::{self, Rng64};
use crate::states::{BlochVector, DensityMatrix};
use crate::tol;

/// Optimal universal 1→2 cloning fidelity, (1 + η)/2 at the lawful
/// shrinking limit η = 2/3. Externally sourced constant; the classifier's
/// Choi test confirms η = 2/3, t = 1/3 is the last completely positive
/// point of the clone family.
pub const OPTIMAL_1_TO_2_FIDELITY: f64 = 5.0 / 6.0;

/// Fidelity survey of a cloning map over sampled pure inputs.
#[derive(Debug, Clone, Serialize)]
pub struct FidelityReport {
    pub fidelity_per_input: Vec<(BlochVector, f64)>,
    pub average_fidelity: f64,
    /// Closed-form prediction where one exists: (1+η)/2 for the affine
    /// clone family, F for the pure-branch cloner.
    pub analytic_prediction: Option<f64>,
    /// The 5/6 bound, attached only to 1→2 (four-dimensional-output) maps.
    pub optimal_bound: Option<f64>,
    pub exceeds_optimal_bound: bool,
    /// Set when any sampled fidelity leaves [0, 1], the signature of a
    /// non-positive map. Values are reported raw, not clamped.
    pub out_of_range_warning: bool,
}

/// Overlap of the input with the first clone's marginal:
/// Tr[ψ · Tr_rest(map(ψ))].
pub fn single_clone_fidelity(map: &LocalMap, psi: &DensityMatrix) -> Result<f64> {
    clone_fidelity(map, psi, 0)
}

/// Same, for an arbitrary clone index.
pub fn clone_fidelity(map: &LocalMap, psi: &DensityMatrix, clone_index: usize) -> Result<f64> {
    if psi.num_qubits() != 1 {
        return Err(Error::structure("cloning fidelity takes a single-qubit input"));
    }
    if !psi.is_pure() {
        return Err(Error::contract("cloning fidelity is defined on pure inputs"));
    }
    let d_out = map.d_out();
    let clones = match d_out {
        4 => 2,
        8 => 3,
        16 => 4,
        _ => {
            return Err(Error::structure(format!(
                "map output dimension {d_out} is not a multi-qubit clone register"
            )))
        }
    };
    if clone_index >= clones {
        return Err(Error::structure(format!(
            "clone index {clone_index} out of range for {clones} clones"
        )));
    }
    let output = map.apply_to_density(psi)?;
    let mut marginal = output;
    let mut remaining = clones;
    let mut keep = clone_index;
    while remaining > 1 {
        // Trace out the last clone unless it is the one we keep, in which
        // case trace out the first.
        let traced = if keep == remaining - 1 { 0 } else { remaining - 1 };
        if traced == 0 {
            keep -= 1;
        }
        marginal = marginal.partial_trace(&vec![2; remaining], traced)?;
        remaining -= 1;
    }
    Ok(marginal.matmul(psi.mat()).trace().re)
}

/// Monte-Carlo fidelity survey over `samples` uniform pure states.
/// Requires at least 1000 samples so the average is meaningful.
pub fn average_fidelity(map: &LocalMap, samples: usize, seed: u64) -> Result<FidelityReport> {
    if samples < 1000 {
        return Err(Error::contract("fidelity survey needs at least 1000 samples"));
    }
    let mut rng = Rng64::new(seed);
    let mut fidelity_per_input = Vec::with_capacity(samples);
    let mut total = 0.0;
    let mut out_of_range = false;
    for _ in 0..samples {
        let s = sample::unit_bloch(&mut rng);
        let psi = crate::states::bloch_to_density(&s)?;
        let f = single_clone_fidelity(map, &psi)?;
        if !(-tol::PROB_CLAMP..=1.0 + tol::PROB_CLAMP).contains(&f) {
            out_of_range = true;
        }
        total += f;
        fidelity_per_input.push((s, f));
    }
    let average = total / samples as f64;

    let analytic_prediction = match map {
        LocalMap::BlochAffine(m) => Some((1.0 + m.eta) / 2.0),
        LocalMap::PureBranch(m) => Some(m.fidelity),
        _ => None,
    };
    let optimal_bound = (map.d_out() == 4).then_some(OPTIMAL_1_TO_2_FIDELITY);
    let exceeds = optimal_bound
        .map(|bound| average > bound + tol::CLONING_BOUND_MARGIN)
        .unwrap_or(false);

    Ok(FidelityReport {
        fidelity_per_input,
        average_fidelity: average,
        analytic_prediction,
        optimal_bound,
        exceeds_optimal_bound: exceeds,
        out_of_range_warning: out_of_range,
    })
}
