//! The built-in example suite: the three local-map families with their
//! expected classifications, distances, decode probabilities, and
//! fidelities. Any expectation that fails its tolerance makes the command
//! exit nonzero.

use nosig_core::{
    average_fidelity, classify_map, conditional_probs, decode_mutual_info, helstrom_success,
    partially_entangled, scan_bases, singlet, BipartiteState, BlochVector, CloneVariant,
    CMatrix, FunctionFamily, LocalMap, Region, SignallingExperiment, Verdict,
};

use crate::report::sig12;
use crate::CliError;

const SCAN_SEED: u64 = 2025;
const SCAN_PAIRS: usize = 100;
const FIDELITY_SAMPLES: usize = 5000;

struct Row {
    name: &'static str,
    shared: &'static str,
    region: Region,
    distance: f64,
    fidelity: f64,
    verdict: Verdict,
}

fn parity_povm() -> Vec<CMatrix> {
    vec![
        CMatrix::diag(&[0.0, 1.0, 1.0, 0.0]),
        CMatrix::diag(&[1.0, 0.0, 0.0, 1.0]),
    ]
}

fn run_row(
    name: &'static str,
    shared_label: &'static str,
    shared: &BipartiteState,
    map: &LocalMap,
    tolerance: f64,
    failures: &mut Vec<String>,
    expect: impl FnOnce(&Row, &mut Vec<String>),
) -> Result<Row, CliError> {
    let classification = classify_map(map)?;
    let scan = scan_bases(shared, map, SCAN_PAIRS, SCAN_SEED)?;
    let fidelity = average_fidelity(map, FIDELITY_SAMPLES, SCAN_SEED)?;
    let row = Row {
        name,
        shared: shared_label,
        region: classification.region,
        distance: scan.max_distance,
        fidelity: fidelity.average_fidelity,
        verdict: if scan.max_distance > tolerance { Verdict::Signals } else { Verdict::NoSignal },
    };
    expect(&row, failures);
    Ok(row)
}

pub fn run_paper_examples(tolerance: f64) -> Result<i32, CliError> {
    let mut failures: Vec<String> = Vec::new();
    let mut rows: Vec<Row> = Vec::new();

    let partial = partially_entangled(std::f64::consts::FRAC_PI_6)?;

    // Example 1: linear, non-positive, better-than-optimal cloning, no
    // signalling.
    rows.push(run_row(
        "example 1  bloch_affine η=0.7 t=1/3",
        "singlet",
        &singlet(),
        &LocalMap::bloch_affine(0.7, 1.0 / 3.0),
        tolerance,
        &mut failures,
        |row, failures| {
            if row.region != Region::LinearNonpositiveNosignal {
                failures.push(format!("example 1: region {} (expected LINEAR_NONPOSITIVE_NOSIGNAL)", row.region));
            }
            if row.distance >= 1e-10 {
                failures.push(format!("example 1: max distance {} (expected < 1e-10)", sig12(row.distance)));
            }
            if (row.fidelity - 0.85).abs() >= 1e-3 {
                failures.push(format!("example 1: fidelity {} (expected 0.85 ± 1e-3)", sig12(row.fidelity)));
            }
        },
    )?);

    // Example 2, odd function on the maximally entangled state: flat.
    let odd = LocalMap::bloch_nonlinear(FunctionFamily::Power(3), 0.0)?;
    rows.push(run_row(
        "example 2  f(s)=s³ t=0",
        "singlet",
        &singlet(),
        &odd,
        tolerance,
        &mut failures,
        |row, failures| {
            if row.region != Region::Nonlinear {
                failures.push(format!("example 2 odd: region {} (expected NONLINEAR)", row.region));
            }
            if row.distance >= 1e-10 {
                failures.push(format!("example 2 odd/singlet: max distance {} (expected < 1e-10)", sig12(row.distance)));
            }
        },
    )?);

    // Example 2, odd function on a partially entangled state: signals.
    rows.push(run_row(
        "example 2  f(s)=s³ t=0",
        "partial(π/6)",
        &partial,
        &odd,
        tolerance,
        &mut failures,
        |row, failures| {
            if row.distance <= 1e-3 {
                failures.push(format!("example 2 odd/partial: max distance {} (expected > 1e-3)", sig12(row.distance)));
            }
            if row.verdict != Verdict::Signals {
                failures.push("example 2 odd/partial: expected SIGNALS".into());
            }
        },
    )?);

    // Example 2, even function on the singlet: signals.
    rows.push(run_row(
        "example 2  f(s)=s² t=0",
        "singlet",
        &singlet(),
        &LocalMap::bloch_nonlinear(FunctionFamily::Square, 0.0)?,
        tolerance,
        &mut failures,
        |row, failures| {
            if row.region != Region::Nonlinear {
                failures.push(format!("example 2 even: region {} (expected NONLINEAR)", row.region));
            }
            if row.distance <= 1e-3 {
                failures.push(format!("example 2 even/singlet: max distance {} (expected > 1e-3)", sig12(row.distance)));
            }
        },
    )?);

    // Example 3, mixture variant with the two-outcome parity decode.
    let mut decode_lines: Vec<String> = Vec::new();
    let mixture_rows: [(f64, &'static str); 3] = [
        (0.0, "example 3  pure_branch N=2 F=0 mixture"),
        (0.3, "example 3  pure_branch N=2 F=0.3 mixture"),
        (1.0, "example 3  pure_branch N=2 F=1 mixture"),
    ];
    for (fidelity, row_name) in mixture_rows {
        let map = LocalMap::pure_branch(2, fidelity, CloneVariant::Mixture)?;
        let experiment = SignallingExperiment::try_new(
            singlet(),
            BlochVector::Z,
            BlochVector::X,
            map.clone(),
            Some(parity_povm()),
            None,
        )?;
        let table = conditional_probs(&experiment)?;
        let info = decode_mutual_info(&table);
        let helstrom = helstrom_success(&experiment)?;

        let p0_psi = table.rows[0][0];
        let p1_psi = table.rows[0][1];
        let p0_phi = table.rows[1][0];
        let p1_phi = table.rows[1][1];
        if p0_psi.abs() >= 1e-12 || (p1_psi - 1.0).abs() >= 1e-12 {
            failures.push(format!("example 3 F={fidelity}: p(0|ψ)={} p(1|ψ)={} (expected 0 and 1)", sig12(p0_psi), sig12(p1_psi)));
        }
        if (p0_phi - 0.5).abs() >= 1e-12 || (p1_phi - 0.5).abs() >= 1e-12 {
            failures.push(format!("example 3 F={fidelity}: p(0|φ)={} p(1|φ)={} (expected 1/2 each)", sig12(p0_phi), sig12(p1_phi)));
        }
        if helstrom < 0.75 - 1e-12 {
            failures.push(format!("example 3 F={fidelity}: helstrom {} (expected ≥ 3/4)", sig12(helstrom)));
        }
        decode_lines.push(format!(
            "  F={fidelity:<4} p(0|ψ)={} p(0|φ)={} helstrom={} mutual info={} bits",
            sig12(p0_psi),
            sig12(p0_phi),
            sig12(helstrom),
            sig12(info),
        ));

        rows.push(run_row(
            row_name,
            "singlet",
            &singlet(),
            &map,
            tolerance,
            &mut failures,
            |row, failures| {
                if row.region != Region::Nonlinear {
                    failures.push(format!("example 3: region {} (expected NONLINEAR)", row.region));
                }
                if row.distance <= 1e-3 {
                    failures.push(format!("example 3: max distance {} (expected > 1e-3)", sig12(row.distance)));
                }
            },
        )?);
    }

    // Example 3, factorized variant.
    rows.push(run_row(
        "example 3  pure_branch N=2 F=0.8 factorized",
        "singlet",
        &singlet(),
        &LocalMap::pure_branch(2, 0.8, CloneVariant::Factorized)?,
        tolerance,
        &mut failures,
        |row, failures| {
            if row.region != Region::Nonlinear {
                failures.push(format!("example 3 factorized: region {} (expected NONLINEAR)", row.region));
            }
            if row.distance <= 1e-3 {
                failures.push(format!("example 3 factorized: max distance {} (expected > 1e-3)", sig12(row.distance)));
            }
        },
    )?);

    println!(
        "{:<44} {:<13} {:<28} {:<19} {:<9} verdict",
        "map", "shared", "region", "max distance", "fidelity"
    );
    println!("{}", "-".repeat(130));
    for row in &rows {
        println!(
            "{:<44} {:<13} {:<28} {:<19} {:<9.6} {}",
            row.name,
            row.shared,
            row.region.to_string(),
            sig12(row.distance),
            row.fidelity,
            row.verdict,
        );
    }
    println!("\ndecode (ψ-basis = z, φ-basis = x, parity POVM):");
    for line in &decode_lines {
        println!("{line}");
    }

    if failures.is_empty() {
        println!("\nall expected values reproduced");
        Ok(0)
    } else {
        eprintln!("\n{} expectation(s) failed:", failures.len());
        for failure in &failures {
            eprintln!("  {failure}");
        }
        Ok(1)
    }
}
