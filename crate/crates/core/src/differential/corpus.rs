//! Corpus files: UTF-8 text, one document per `\n`-terminated line.

use std::io;
use std::path::{Path, PathBuf};

/// Splits raw corpus bytes into documents. A trailing newline does not
/// produce an empty final document. Bytes are kept as-is so invalid UTF-8 can
/// be reported per document.
pub fn split_documents(bytes: &[u8]) -> Vec<&[u8]> {
    let body = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    if body.is_empty() && bytes.len() <= 1 {
        return Vec::new();
    }
    body.split(|&b| b == b'\n').collect()
}

/// Reads a corpus file into owned documents.
pub fn read_documents(path: impl AsRef<Path>) -> io::Result<Vec<Vec<u8>>> {
    let bytes = std::fs::read(path)?;
    Ok(split_documents(&bytes)
        .into_iter()
        .map(<[u8]>::to_vec)
        .collect())
}

/// Directory holding the bundled fixtures of this crate.
pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Bundled multilingual conformance corpus (over 1 MB).
pub fn multilingual_fixture() -> PathBuf {
    fixtures_dir().join("corpus/multilingual.txt")
}

/// Bundled 1000-document training corpus.
pub fn training_fixture() -> PathBuf {
    fixtures_dir().join("corpus/train_small.txt")
}

/// Bundled hand-checked examples, one per line.
pub fn worked_examples_fixture() -> PathBuf {
    fixtures_dir().join("corpus/worked_examples.txt")
}

/// `(vocab.json, merges.txt)` of the bundled model trained on
/// [`training_fixture`].
pub fn model_fixture() -> (PathBuf, PathBuf) {
    let dir = fixtures_dir().join("model");
    (dir.join("vocab.json"), dir.join("merges.txt"))
}

/// Strings whose segmentation is fixed by hand, with their expected splits.
pub const WORKED_EXAMPLES: &[(&str, &[&str])] = &[
    (
        "Lorem ipsum dolor sit amet.",
        &["Lorem", " ipsum", " dolor", " sit", " amet", "."],
    ),
    ("12345678", &["123", "456", "78"]),
    (
        "'Does it work?\u{2019} She asked.",
        &[
            "'D",
            "oes",
            " it",
            " work",
            "?\u{2019}",
            " She",
            " asked",
            ".",
        ],
    ),
];
