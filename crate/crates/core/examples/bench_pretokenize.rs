//! Times pretokenization of a corpus with both backends and prints the
//! throughput table.
//!
//! ```text
//! cargo run -p peek2 --release --example bench_pretokenize -- [corpus] [repetitions]
//! ```

use std::path::{Path, PathBuf};

use peek2::bench::{run_bench, BenchOptions, BenchReport, BenchTask, TaskKind};
use peek2::differential::corpus::multilingual_fixture;

pub fn run_example(
    corpus: &Path,
    repetitions: usize,
) -> Result<BenchReport, Box<dyn std::error::Error>> {
    let tasks = BenchTask::pairs(&[TaskKind::PretokenizeOnly], corpus, repetitions);
    let report = run_bench(&tasks, &BenchOptions::default())?;
    print!("{}", report.to_table());
    Ok(report)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let corpus = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(multilingual_fixture);
    let reps = match args.next() {
        Some(r) => r.parse()?,
        None => 5,
    };
    run_example(&corpus, reps)?;
    Ok(())
}
