//! Runs each example's `run_example` so the examples stay working.

#[allow(dead_code)]
#[path = "../examples/split_text.rs"]
mod split_text;

#[allow(dead_code)]
#[path = "../examples/decision_table.rs"]
mod decision_table;

#[allow(dead_code)]
#[path = "../examples/bpe_roundtrip.rs"]
mod bpe_roundtrip;

#[allow(dead_code)]
#[path = "../examples/oracle_compare.rs"]
mod oracle_compare;

#[allow(dead_code)]
#[path = "../examples/fuzz_conformance.rs"]
mod fuzz_conformance;

#[allow(dead_code)]
#[path = "../examples/bench_pretokenize.rs"]
mod bench_pretokenize;

#[allow(dead_code)]
#[path = "../examples/train_model.rs"]
mod train_model;

#[allow(dead_code)]
#[path = "../examples/generate_unicode_tables.rs"]
mod generate_unicode_tables;

#[allow(dead_code)]
#[path = "../examples/build_fixture_corpus.rs"]
mod build_fixture_corpus;

use std::path::PathBuf;

use peek2::differential::corpus::{
    fixtures_dir, multilingual_fixture, training_fixture, worked_examples_fixture,
};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("peek2-examples-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn split_text_example() {
    let segs = split_text::run_example("12345678");
    assert_eq!(segs.len(), 3);
}

#[test]
fn decision_table_example_finds_no_disagreement() {
    assert!(decision_table::run_example().unwrap().is_empty());
}

#[test]
fn bpe_roundtrip_example() {
    let e = bpe_roundtrip::run_example("naïve tokens, 42 of them").unwrap();
    assert!(!e.is_empty());
}

#[test]
fn oracle_compare_example() {
    assert!(oracle_compare::run_example(&worked_examples_fixture()).unwrap());
}

#[test]
fn fuzz_conformance_example() {
    assert!(fuzz_conformance::run_example(500, 3).unwrap());
}

#[test]
fn bench_pretokenize_example() {
    let report = bench_pretokenize::run_example(&worked_examples_fixture(), 3).unwrap();
    assert_eq!(report.measurements.len(), 2);
}

#[test]
fn train_model_example_rebuilds_bundled_model() {
    let out = scratch("model");
    train_model::run_example(&training_fixture(), &out, train_model::FIXTURE_VOCAB_SIZE).unwrap();
    for file in ["vocab.json", "merges.txt"] {
        assert_eq!(
            std::fs::read(out.join(file)).unwrap(),
            std::fs::read(fixtures_dir().join("model").join(file)).unwrap(),
            "{file}"
        );
    }
}

#[test]
fn generate_unicode_tables_example_is_reproducible() {
    let out = scratch("tables");
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    generate_unicode_tables::run_example(&root.join("ucd/16.0.0"), &out).unwrap();
    for file in ["tables.rs", "tables.sha256"] {
        assert_eq!(
            std::fs::read(out.join(file)).unwrap(),
            std::fs::read(root.join("src/unicode").join(file)).unwrap(),
            "{file}"
        );
    }
}

#[test]
fn build_fixture_corpus_example_is_reproducible() {
    let path = scratch("corpus").join("multilingual.txt");
    build_fixture_corpus::run_example(&path).unwrap();
    assert_eq!(
        std::fs::read(path).unwrap(),
        std::fs::read(multilingual_fixture()).unwrap()
    );
}
