//! Regenerates `src/unicode/tables.rs` and its checksum manifest from a
//! directory of UCD text files.
//!
//! ```text
//! cargo run -p peek2 --example generate_unicode_tables -- ucd/16.0.0
//! ```
//!
//! The directory name is taken as the Unicode version. Paths are relative to
//! the `peek2` crate root.

use std::path::{Path, PathBuf};

use peek2::unicode::ucd::{checksum_manifest, ScalarClassTables, UcdSources};

pub fn run_example(ucd_dir: &Path, out_dir: &Path) -> Result<(), Box<dyn std::error::Error>> {
    let version = ucd_dir
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or("UCD directory must be named after its Unicode version")?;
    let sources = UcdSources::read_dir(ucd_dir)?;
    let tables = ScalarClassTables::from_sources(&sources, version)?;
    let rendered = tables.render_source();
    std::fs::write(out_dir.join("tables.rs"), &rendered)?;
    std::fs::write(
        out_dir.join("tables.sha256"),
        checksum_manifest(&sources, &rendered),
    )?;
    println!(
        "Unicode {version}: {} letter ranges, {} number ranges, {} White_Space ranges, {} extra contraction folds",
        tables.letter_ranges.len(),
        tables.number_ranges.len(),
        tables.whitespace_ranges.len(),
        tables.contraction_folds.len()
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let mut args = std::env::args().skip(1);
    let ucd_dir = root.join(args.next().unwrap_or_else(|| "ucd/16.0.0".into()));
    let out_dir = root.join(args.next().unwrap_or_else(|| "src/unicode".into()));
    run_example(&ucd_dir, &out_dir)
}
