//! Run signalling experiments with configurable local maps, classify the
//! maps, and reproduce the built-in example suite.
//!
//! Exit codes: 0 success, 1 expected-value mismatch in `paper-examples`,
//! 2 configuration error, 3 contract violation at runtime.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod config;
mod examples;
mod report;

use config::{build_experiment, build_map, build_shared_state, config_hash, parse_config};
use report::{sig12, timestamp_unix, to_json, ClassifyReport, RunReport, ScanReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Core(#[from] nosig_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } | CliError::Io(_) => 2,
            CliError::Core(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "nosig",
    about = "Signalling experiments with local maps on entangled qubit pairs",
    version
)]
struct Cli {
    /// Distance threshold above which a run is reported as SIGNALS.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in example suite and verify its expected values.
    PaperExamples,
    /// Execute one configured experiment and emit a JSON report.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the configured map (linear / trace-preserving / positive /
    /// completely positive) with numeric evidence.
    Classify {
        #[arg(long)]
        config: PathBuf,
    },
    /// Sweep random basis pairs and report the largest distance found.
    Scan {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        /// Overrides the seed from the config file.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn read_config(path: &Path) -> Result<(config::ExperimentConfig, String), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
        path: path.display().to_string(),
        message: format!("cannot read config: {e}"),
    })?;
    let parsed = parse_config(&text)?;
    let hash = config_hash(&text);
    Ok((parsed, hash))
}

fn cmd_run(path: &Path, out: Option<&Path>, tolerance: f64) -> Result<u8, CliError> {
    let (cfg, hash) = read_config(path)?;
    let experiment = build_experiment(&cfg)?;
    let seed = cfg.seed.unwrap_or(nosig_core::DEFAULT_SEED);

    let core_report = nosig_core::run_experiment(&experiment, tolerance)?;
    let classification = nosig_core::classify_map_with(
        experiment.bob_map(),
        seed,
        cfg.samples.unwrap_or(500).max(100),
    )?;

    let report = RunReport {
        distance: core_report.distance,
        helstrom_success: core_report.helstrom_success,
        verdict: core_report.verdict,
        conditional_probs: core_report.conditional_probs,
        mutual_info_bits: core_report.mutual_info_bits,
        classification,
        config_hash: hash,
        seed,
        tolerance,
        timestamp_unix: timestamp_unix(),
    };
    let json = to_json(&report);
    match out {
        Some(out_path) => {
            std::fs::write(out_path, json)?;
            println!("report written to {}", out_path.display());
        }
        None => println!("{json}"),
    }
    Ok(0)
}

fn cmd_classify(path: &Path) -> Result<u8, CliError> {
    let (cfg, hash) = read_config(path)?;
    let map = build_map(&cfg.bob_map)?;
    let seed = cfg.seed.unwrap_or(nosig_core::DEFAULT_SEED);
    let classification =
        nosig_core::classify_map_with(&map, seed, cfg.samples.unwrap_or(500).max(100))?;
    let report = ClassifyReport {
        classification,
        config_hash: hash,
        seed,
        timestamp_unix: timestamp_unix(),
    };
    println!("{}", to_json(&report));
    Ok(0)
}

fn cmd_scan(path: &Path, pairs: usize, seed_flag: Option<u64>, tolerance: f64) -> Result<u8, CliError> {
    let (cfg, hash) = read_config(path)?;
    let shared = build_shared_state(&cfg.shared_state)?;
    let map = build_map(&cfg.bob_map)?;
    let seed = seed_flag.or(cfg.seed).unwrap_or(nosig_core::DEFAULT_SEED);
    let scan = nosig_core::scan_bases(&shared, &map, pairs, seed)?;
    let report = ScanReport {
        max_distance: scan.max_distance,
        argmax_pair: scan.argmax_pair,
        pairs: scan.pairs,
        verdict: if scan.max_distance > tolerance {
            nosig_core::Verdict::Signals
        } else {
            nosig_core::Verdict::NoSignal
        },
        config_hash: hash,
        seed,
        tolerance,
        timestamp_unix: timestamp_unix(),
    };
    println!("{}", to_json(&report));
    eprintln!(
        "max distance {} over {} pairs",
        sig12(scan.max_distance),
        scan.pairs
    );
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::PaperExamples => examples::run_paper_examples(cli.tolerance).map(|c| c as u8),
        Command::Run { config, out } => cmd_run(config, out.as_deref(), cli.tolerance),
        Command::Classify { config } => cmd_classify(config),
        Command::Scan { config, pairs, seed } => cmd_scan(config, *pairs, *seed, cli.tolerance),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
