//! JSON experiment configuration and its conversion into core types.
//!
//! Matrices are nested arrays of [re, im] pairs, row by row. Validation
//! errors carry the field path that caused them (`bases[0]`,
//! `bob_map.ops[2]`, ...) so configs can be fixed without guesswork.

use serde::Deserialize;

use nosig_core::{
    partially_entangled, singlet, BipartiteState, BlochVector, CloneVariant, CMatrix,
    DensityMatrix, FunctionFamily, KrausMap, LocalMap, PureBranchMap, SignallingExperiment,
    TransferMap,
};

use crate::CliError;

pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub shared_state: SharedStateConfig,
    pub bob_map: MapConfig,
    /// Two unit 3-vectors; defaults to z and x.
    #[serde(default = "default_bases")]
    pub bases: [[f64; 3]; 2],
    #[serde(default)]
    pub povm: Option<Vec<JsonMatrix>>,
    #[serde(default)]
    pub alice_pre_map: Option<Vec<JsonMatrix>>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub samples: Option<usize>,
}

fn default_bases() -> [[f64; 3]; 2] {
    [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SharedStateConfig {
    Singlet,
    PartiallyEntangled { theta: f64 },
    Explicit { matrix: JsonMatrix },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapConfig {
    Kraus { ops: Vec<JsonMatrix> },
    Transfer { matrix: JsonMatrix },
    BlochAffine { eta: f64, t: f64 },
    BlochNonlinear { f: FamilyConfig, t: f64 },
    PureBranch { n_clones: usize, fidelity: f64, variant: VariantConfig },
}

/// A single family applied to all three Bloch components, or one per
/// component.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FamilyConfig {
    Isotropic(FamilySpec),
    PerComponent([FamilySpec; 3]),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    Named(String),
    Power { power: u32 },
}

#[derive(Debug, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
pub enum VariantConfig {
    Mixture,
    Factorized,
}

fn config_err(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Config { path: path.into(), message: message.into() }
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, CliError> {
    serde_json::from_str(text)
        .map_err(|e| config_err("<config>", format!("invalid JSON: {e}")))
}

fn to_matrix(json: &JsonMatrix, path: &str) -> Result<CMatrix, CliError> {
    let rows = json.len();
    if rows == 0 {
        return Err(config_err(path, "matrix has no rows"));
    }
    let cols = json[0].len();
    if cols == 0 {
        return Err(config_err(path, "matrix has no columns"));
    }
    for (i, row) in json.iter().enumerate() {
        if row.len() != cols {
            return Err(config_err(
                format!("{path}[{i}]"),
                format!("row has {} entries, expected {cols}", row.len()),
            ));
        }
    }
    let m = CMatrix::from_fn(rows, cols, |i, j| {
        nosig_core::Complex64::new(json[i][j][0], json[i][j][1])
    });
    m.validate_finite()
        .map_err(|e| config_err(path, e.to_string()))?;
    Ok(m)
}

fn family_spec(spec: &FamilySpec, path: &str) -> Result<FunctionFamily, CliError> {
    match spec {
        FamilySpec::Power { power } => {
            if *power == 0 {
                return Err(config_err(path, "power exponent must be at least 1"));
            }
            Ok(FunctionFamily::Power(*power))
        }
        FamilySpec::Named(name) => match name.as_str() {
            "square" => Ok(FunctionFamily::Square),
            "abs" => Ok(FunctionFamily::Abs),
            other => Err(config_err(
                path,
                format!("unknown function family \"{other}\" (expected \"square\", \"abs\", or {{\"power\": k}})"),
            )),
        },
    }
}

pub fn build_shared_state(config: &SharedStateConfig) -> Result<BipartiteState, CliError> {
    match config {
        SharedStateConfig::Singlet => Ok(singlet()),
        SharedStateConfig::PartiallyEntangled { theta } => partially_entangled(*theta)
            .map_err(|e| config_err("shared_state.theta", e.to_string())),
        SharedStateConfig::Explicit { matrix } => {
            let m = to_matrix(matrix, "shared_state.matrix")?;
            if m.rows() != 4 || m.cols() != 4 {
                return Err(config_err(
                    "shared_state.matrix",
                    format!("expected a 4x4 matrix, got {}x{}", m.rows(), m.cols()),
                ));
            }
            let rho = DensityMatrix::try_new(m)
                .map_err(|e| config_err("shared_state.matrix", e.to_string()))?;
            BipartiteState::try_new(rho)
                .map_err(|e| config_err("shared_state.matrix", e.to_string()))
        }
    }
}

pub fn build_map(config: &MapConfig) -> Result<LocalMap, CliError> {
    match config {
        MapConfig::Kraus { ops } => {
            if ops.is_empty() {
                return Err(config_err("bob_map.ops", "needs at least one operator"));
            }
            let mut kraus_ops = Vec::with_capacity(ops.len());
            for (i, op) in ops.iter().enumerate() {
                kraus_ops.push(to_matrix(op, &format!("bob_map.ops[{i}]"))?);
            }
            KrausMap::try_new(kraus_ops)
                .map(LocalMap::Kraus)
                .map_err(|e| config_err("bob_map.ops", e.to_string()))
        }
        MapConfig::Transfer { matrix } => {
            let m = to_matrix(matrix, "bob_map.matrix")?;
            TransferMap::try_new(m)
                .map(LocalMap::Transfer)
                .map_err(|e| config_err("bob_map.matrix", e.to_string()))
        }
        MapConfig::BlochAffine { eta, t } => {
            if !eta.is_finite() || !t.is_finite() {
                return Err(config_err("bob_map", "eta and t must be finite"));
            }
            Ok(LocalMap::bloch_affine(*eta, *t))
        }
        MapConfig::BlochNonlinear { f, t } => {
            let families = match f {
                FamilyConfig::Isotropic(spec) => {
                    let fam = family_spec(spec, "bob_map.f")?;
                    [fam, fam, fam]
                }
                FamilyConfig::PerComponent(specs) => [
                    family_spec(&specs[0], "bob_map.f[0]")?,
                    family_spec(&specs[1], "bob_map.f[1]")?,
                    family_spec(&specs[2], "bob_map.f[2]")?,
                ],
            };
            nosig_core::BlochNonlinearCloneMap::new(families, *t)
                .map(LocalMap::BlochNonlinear)
                .map_err(|e| config_err("bob_map", e.to_string()))
        }
        MapConfig::PureBranch { n_clones, fidelity, variant } => {
            let variant = match variant {
                VariantConfig::Mixture => CloneVariant::Mixture,
                VariantConfig::Factorized => CloneVariant::Factorized,
            };
            PureBranchMap::try_new(*n_clones, *fidelity, variant)
                .map(LocalMap::PureBranch)
                .map_err(|e| config_err("bob_map", e.to_string()))
        }
    }
}

fn build_basis(raw: &[f64; 3], path: &str) -> Result<BlochVector, CliError> {
    let v = BlochVector::new(raw[0], raw[1], raw[2]);
    if !v.is_unit() {
        return Err(config_err(
            path,
            format!("basis vector must have unit norm (got {:.6})", v.norm()),
        ));
    }
    Ok(v)
}

pub fn build_experiment(config: &ExperimentConfig) -> Result<SignallingExperiment, CliError> {
    let shared = build_shared_state(&config.shared_state)?;
    let bob_map = build_map(&config.bob_map)?;
    let basis_1 = build_basis(&config.bases[0], "bases[0]")?;
    let basis_2 = build_basis(&config.bases[1], "bases[1]")?;

    let povm = match &config.povm {
        None => None,
        Some(elements) => {
            let mut out = Vec::with_capacity(elements.len());
            for (i, element) in elements.iter().enumerate() {
                out.push(to_matrix(element, &format!("povm[{i}]"))?);
            }
            Some(out)
        }
    };

    let alice_pre_map = match &config.alice_pre_map {
        None => None,
        Some(ops) => {
            let mut kraus_ops = Vec::with_capacity(ops.len());
            for (i, op) in ops.iter().enumerate() {
                kraus_ops.push(to_matrix(op, &format!("alice_pre_map[{i}]"))?);
            }
            Some(
                KrausMap::try_new(kraus_ops)
                    .map_err(|e| config_err("alice_pre_map", e.to_string()))?,
            )
        }
    };

    SignallingExperiment::try_new(shared, basis_1, basis_2, bob_map, povm, alice_pre_map)
        .map_err(|e| config_err("<experiment>", e.to_string()))
}

/// FNV-1a hash of the raw config bytes; embedded in every report so a
/// result can be traced back to the exact configuration that produced it.
pub fn config_hash(text: &str) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in text.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a64:{hash:016x}")
}
