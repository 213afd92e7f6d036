//! Prints the decision table and checks every cell against the regex
//! oracle's first matching alternative on a few representative pairs.
//!
//! ```text
//! cargo run -p peek2 --example decision_table
//! ```

use peek2::oracle::Oracle;
use peek2::{decide_branch, Branch, Category, DecisionTable};

/// Two-scalar probes per category (the last entry stands for end of input).
pub fn representatives(cat: Category) -> &'static [&'static str] {
    match cat {
        Category::Other => &["!", ".", "\u{2019}", "\u{1F600}"],
        Category::Space => &[" "],
        Category::Quote => &["'"],
        Category::LineFeed => &["\n", "\r"],
        Category::Letter => &["a", "s", "\u{4E2D}", "\u{017F}"],
        Category::Whitespace => &["\t", "\u{00A0}", "\u{3000}"],
        Category::Number => &["7", "\u{0663}", "\u{00BD}"],
        Category::Eos => &[""],
    }
}

/// Cells where the oracle's first alternative disagrees with the table.
pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    println!("{}", DecisionTable::CL100K);
    let oracle = Oracle::global();
    let mut disagreements = Vec::new();
    for first in Category::SCALAR {
        for second in Category::COLUMNS {
            let expected = decide_branch(first, second);
            for a in representatives(first) {
                for b in representatives(second) {
                    let probe = format!("{a}{b}");
                    let Some((got, _)) = oracle.first_branch(&probe)? else {
                        continue;
                    };
                    // A quote before a letter tries contractions first and
                    // falls back to a word.
                    let ok =
                        got == expected || (expected == Branch::Contraction && got == Branch::Word);
                    if !ok {
                        disagreements.push(format!("{probe:?}: table {expected}, oracle {got}"));
                    }
                }
            }
        }
    }
    println!("{} disagreements", disagreements.len());
    for d in &disagreements {
        println!("  {d}");
    }
    Ok(disagreements)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    if !run_example()?.is_empty() {
        std::process::exit(1);
    }
    Ok(())
}
