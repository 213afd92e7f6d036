//! Seeded differential fuzzing of the table-driven splitter against the
//! regex oracle.
//!
//! ```text
//! cargo run --release -p peek2 --example fuzz_conformance -- [cases] [seed]
//! ```

use std::time::Instant;

use peek2::differential::{fuzz, FuzzConfig};

pub fn run_example(case_count: usize, seed: u64) -> Result<bool, Box<dyn std::error::Error>> {
    let config = FuzzConfig {
        seed,
        case_count,
        ..FuzzConfig::default()
    };
    let started = Instant::now();
    let report = fuzz(&config)?;
    println!(
        "{} cases, {} scalars, seed {}: {} mismatches in {:.2?}",
        report.inputs_tested,
        report.scalars_tested,
        seed,
        report.mismatches.len(),
        started.elapsed()
    );
    for m in report.mismatches.iter().take(5) {
        println!(
            "  case {}: reproducer {:?}, candidate {:?} vs oracle {:?}",
            m.index, m.reproducer, m.candidate_boundaries, m.reference_boundaries
        );
    }
    Ok(report.passed())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let cases = args
        .next()
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(100_000);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);
    if !run_example(cases, seed)? {
        std::process::exit(1);
    }
    Ok(())
}
