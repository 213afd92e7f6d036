use peek2::cli::{
    diff_exit_code, run_from, unescape_segment, Streams, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE,
};
use peek2::differential::corpus::{training_fixture, worked_examples_fixture};
use peek2::differential::diff_corpus_with;
use peek2::oracle::Oracle;
use peek2::{Branch, Category, DecisionTable, Peek2};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], stdin: &[u8]) -> Run {
    let mut input = stdin;
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_from(
        std::iter::once("peek2").chain(args.iter().copied()),
        &mut Streams {
            stdin: &mut input,
            stdout: &mut out,
            stderr: &mut err,
        },
    );
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("peek2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn split_lorem_one_segment_per_line() {
    let r = run(
        &["split", "--impl", "peek2"],
        b"Lorem ipsum dolor sit amet.",
    );
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.stdout, "Lorem\n ipsum\n dolor\n sit\n amet\n.\n");
}

#[test]
fn split_offsets_on_digits() {
    let r = run(&["split", "--offsets"], b"12345678");
    assert_eq!(r.stdout, "0\t3\t123\n3\t6\t456\n6\t8\t78\n");
}

#[test]
fn split_output_is_lossless_and_backends_agree() {
    let text = "a\\b\tc \r\n\n  x\u{3000}'ll\n";
    let peek = run(&["split"], text.as_bytes());
    let oracle = run(&["split", "--impl", "oracle"], text.as_bytes());
    assert_eq!(peek.stdout, oracle.stdout);
    let rebuilt: String = peek
        .stdout
        .lines()
        .map(|l| unescape_segment(l).unwrap())
        .collect();
    assert_eq!(rebuilt, text);
}

#[test]
fn split_file_to_file() {
    let (input, output) = (tmp("in.txt"), tmp("out.txt"));
    std::fs::write(&input, "hi there").unwrap();
    let r = run(
        &[
            "split",
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
        ],
        b"",
    );
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(output).unwrap(), "hi\n there\n");
}

#[test]
fn diff_on_fixture_exits_zero() {
    let r = run(
        &[
            "diff",
            "--corpus",
            worked_examples_fixture().to_str().unwrap(),
        ],
        b"",
    );
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("\"passed\":true"));
}

#[test]
fn fuzz_is_reproducible() {
    let a = run(&["fuzz", "--seed", "7", "--cases", "300"], b"");
    let b = run(&["fuzz", "--seed", "7", "--cases", "300"], b"");
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.contains("\"seed\":7"));
}

#[test]
fn mismatch_exit_code_is_one() {
    let broken = Peek2::with_table(DecisionTable::CL100K.with_cell(
        Category::Space,
        Category::Letter,
        Branch::Whitespace,
    ));
    let report = diff_corpus_with(&["x ab"], &broken, Oracle::global()).unwrap();
    assert_eq!(diff_exit_code(&report), EXIT_MISMATCH);
    assert_eq!(EXIT_MISMATCH, 1);
    let fine = diff_corpus_with(&["ab!"], &Peek2::new(), Oracle::global()).unwrap();
    assert_eq!(diff_exit_code(&fine), EXIT_OK);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(run(&[], b"").code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"], b"").code, EXIT_USAGE);
    assert_eq!(run(&["split", "--impl", "perl"], b"").code, EXIT_USAGE);
    let bad = run(&["split"], b"ok \xFF");
    assert_eq!(bad.code, EXIT_USAGE);
    assert!(bad.stderr.contains("UTF-8"));
    assert_eq!(
        run(&["split", "--input", "/nonexistent/x"], b"").code,
        EXIT_USAGE
    );
    assert_eq!(run(&["--help"], b"").code, EXIT_OK);
}

#[test]
fn encode_with_offsets_tiles_input() {
    let text = "The tokenizer's 123 tests\n";
    let r = run(&["encode", "--offsets"], text.as_bytes());
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let mut pos = 0;
    for line in r.stdout.lines() {
        let cols: Vec<usize> = line.split('\t').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols[1], pos);
        pos = cols[2];
    }
    assert_eq!(pos, text.len());
    let ids = run(&["encode", "--impl", "oracle"], text.as_bytes());
    assert_eq!(ids.stdout.lines().count(), r.stdout.lines().count());
}

#[test]
fn train_then_encode_with_trained_model() {
    let (vocab, merges) = (tmp("vocab.json"), tmp("merges.txt"));
    let r = run(
        &[
            "train",
            "--input",
            training_fixture().to_str().unwrap(),
            "--vocab-size",
            "300",
            "--vocab",
            vocab.to_str().unwrap(),
            "--merges",
            merges.to_str().unwrap(),
        ],
        b"",
    );
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stderr.contains("300 tokens"));
    let e = run(
        &[
            "encode",
            "--vocab",
            vocab.to_str().unwrap(),
            "--merges",
            merges.to_str().unwrap(),
        ],
        b"hello",
    );
    assert_eq!(e.code, EXIT_OK, "{}", e.stderr);
    assert!(!e.stdout.is_empty());
}

#[test]
fn bench_small_corpus_writes_table_and_records() {
    let corpus = tmp("bench.txt");
    std::fs::write(&corpus, "Hello, world! It's 2024.\n".repeat(20)).unwrap();
    let records = tmp("records.jsonl");
    let r = run(
        &[
            "bench",
            "--corpus",
            corpus.to_str().unwrap(),
            "--task",
            "pretokenize-only",
            "--task",
            "encode-batch",
            "--repetitions",
            "3",
            "--records",
            records.to_str().unwrap(),
        ],
        b"",
    );
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("pretokenize-only") && r.stdout.contains("encode-batch"));
    assert!(r.stdout.contains("threads:"));
    let lines = std::fs::read_to_string(records).unwrap();
    assert_eq!(lines.lines().count(), 4 + 2);
    let too_few = run(
        &[
            "bench",
            "--corpus",
            corpus.to_str().unwrap(),
            "--repetitions",
            "2",
        ],
        b"",
    );
    assert_eq!(too_few.code, EXIT_USAGE);
}
