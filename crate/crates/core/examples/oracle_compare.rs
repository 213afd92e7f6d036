//! Splits text with both the table-driven splitter and the regex oracle and
//! shows where (if anywhere) they disagree.
//!
//! ```text
//! cargo run -p peek2 --example oracle_compare -- [corpus-file]
//! ```
//! Without an argument the bundled multilingual corpus is used, both line by
//! line and as one document.

use std::path::PathBuf;

use peek2::differential::corpus::{multilingual_fixture, read_documents};
use peek2::differential::{diff_corpus, DiffReport};
use peek2::oracle::Oracle;
use peek2::pretokenize_strings;

fn show(report: &DiffReport, label: &str) {
    println!(
        "{label}: {} inputs, {} scalars, {} mismatches, {} invalid",
        report.inputs_tested,
        report.scalars_tested,
        report.mismatches.len(),
        report.invalid_documents.len()
    );
    for m in report.mismatches.iter().take(3) {
        println!(
            "  #{} at byte {}: {:?}",
            m.index, m.first_divergent_offset, m.reproducer
        );
    }
}

pub fn run_example(path: &std::path::Path) -> Result<bool, Box<dyn std::error::Error>> {
    let sample = "I'll pay $1,234.56\u{00A0}today\u{2014}OK?\n\n  Bye.";
    let oracle: Vec<&str> = Oracle::global()
        .oracle_split(sample)?
        .iter()
        .map(|s| s.text(sample))
        .collect();
    println!("peek2:  {:?}", pretokenize_strings(sample));
    println!("oracle: {oracle:?}");

    let docs = read_documents(path)?;
    let per_line = diff_corpus(&docs)?;
    show(&per_line, "per line");
    let whole = diff_corpus(&[std::fs::read(path)?])?;
    show(&whole, "whole file");
    Ok(per_line.passed() && whole.passed())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(multilingual_fixture);
    if !run_example(&path)? {
        std::process::exit(1);
    }
    Ok(())
}
