//! Trains a byte-level BPE vocabulary and writes `vocab.json` / `merges.txt`.
//!
//! ```text
//! cargo run -p peek2 --release --example train_model -- [corpus] [out-dir] [vocab-size]
//! ```
//! The defaults rebuild the bundled model from the bundled training corpus.

use std::path::{Path, PathBuf};

use peek2::bpe::{train_bpe, BpeModel};
use peek2::differential::corpus::{fixtures_dir, training_fixture};

pub const FIXTURE_VOCAB_SIZE: usize = 1024;
pub const FIXTURE_MIN_FREQUENCY: u64 = 2;

pub fn run_example(
    corpus: &Path,
    out_dir: &Path,
    vocab_size: usize,
) -> Result<BpeModel, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(corpus)?;
    let docs: Vec<&str> = text.lines().collect();
    let model = train_bpe(&docs, vocab_size, FIXTURE_MIN_FREQUENCY)?;
    std::fs::create_dir_all(out_dir)?;
    model.save_files(out_dir.join("vocab.json"), out_dir.join("merges.txt"))?;

    let longest = (0..model.vocab_size() as u32)
        .filter_map(|id| model.token_bytes(id))
        .max_by_key(|t| t.len())
        .unwrap_or_default();
    println!(
        "{} documents, {} tokens, {} merges, longest token {:?}",
        docs.len(),
        model.vocab_size(),
        model.merges().len(),
        String::from_utf8_lossy(longest)
    );
    Ok(model)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let corpus = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(training_fixture);
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| fixtures_dir().join("model"));
    let size = match args.next() {
        Some(s) => s.parse()?,
        None => FIXTURE_VOCAB_SIZE,
    };
    run_example(&corpus, &out, size)?;
    Ok(())
}
