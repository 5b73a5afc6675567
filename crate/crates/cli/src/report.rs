//! Report documents emitted by the CLI. All JSON fields except
//! `timestamp_unix` are deterministic for a given (config, seed).

use serde::Serialize;
use std::time::{SystemTime, UNIX_EPOCH};

use nosig_core::{BlochVector, CondProbTable, MapClassification, Verdict};

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub distance: f64,
    pub helstrom_success: f64,
    pub verdict: Verdict,
    pub conditional_probs: Option<CondProbTable>,
    pub mutual_info_bits: Option<f64>,
    pub classification: MapClassification,
    pub config_hash: String,
    pub seed: u64,
    pub tolerance: f64,
    pub timestamp_unix: u64,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub classification: MapClassification,
    pub config_hash: String,
    pub seed: u64,
    pub timestamp_unix: u64,
}

#[derive(Debug, Serialize)]
pub struct ScanReport {
    pub max_distance: f64,
    pub argmax_pair: (BlochVector, BlochVector),
    pub pairs: usize,
    pub verdict: Verdict,
    pub config_hash: String,
    pub seed: u64,
    pub tolerance: f64,
    pub timestamp_unix: u64,
}

pub fn timestamp_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// 12 significant digits, the precision every printed number carries.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize infallibly")
}
