//! Conformance harness: run two splitters over the same inputs and compare
//! segment boundaries byte for byte.
//!
//! Inputs come from a corpus (one document per line) or from the seeded
//! fuzzer. Every mismatch is shrunk to a small reproducer that still
//! mismatches. Reports serialize as one JSON object per mismatch followed by
//! a summary line.

pub mod corpus;
mod fuzz;
mod shrink;

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::oracle::Oracle;
use crate::split::{boundaries, Peek2, Segment, SplitError, Splitter};

pub use fuzz::{CaseGenerator, FuzzConfig, BOUNDARY_ALPHABET};
pub use shrink::minimize;

const EXCERPT_RADIUS: usize = 24;
const SHRINK_WINDOW: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum DiffError {
    #[error("reference splitter failed on input {index}: {source}")]
    Reference {
        index: usize,
        #[source]
        source: SplitError,
    },
    #[error("candidate splitter failed on input {index}: {source}")]
    Candidate {
        index: usize,
        #[source]
        source: SplitError,
    },
    #[error("invalid fuzz configuration: {0}")]
    Config(String),
}

/// One disagreement between candidate and reference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Index of the document or fuzz case.
    pub index: usize,
    /// Text around the first divergence.
    pub excerpt: String,
    /// Byte offset (in the original input) of the first boundary present in
    /// only one of the two splits.
    pub first_divergent_offset: usize,
    /// Shrunk input that still mismatches.
    pub reproducer: String,
    /// Candidate boundaries on `reproducer`.
    pub candidate_boundaries: Vec<usize>,
    /// Reference boundaries on `reproducer`.
    pub reference_boundaries: Vec<usize>,
}

/// A document whose bytes are not UTF-8.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvalidDocument {
    pub index: usize,
    pub valid_up_to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DiffReport {
    pub candidate: String,
    pub reference: String,
    pub inputs_tested: usize,
    pub scalars_tested: usize,
    /// Sorted by input index.
    pub mismatches: Vec<Mismatch>,
    pub invalid_documents: Vec<InvalidDocument>,
    /// Fuzzer seed, when the inputs were generated.
    pub seed: Option<u64>,
}

#[derive(Serialize)]
struct Summary<'a> {
    summary: SummaryBody<'a>,
}

#[derive(Serialize)]
struct SummaryBody<'a> {
    candidate: &'a str,
    reference: &'a str,
    inputs_tested: usize,
    scalars_tested: usize,
    mismatches: usize,
    invalid_documents: usize,
    seed: Option<u64>,
    passed: bool,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// JSON lines: one per mismatch, then one per invalid document, then
    /// `{"summary": {...}}`.
    pub fn write_jsonl(&self, mut out: impl Write) -> io::Result<()> {
        for m in &self.mismatches {
            serde_json::to_writer(&mut out, &serde_json::json!({ "mismatch": m }))?;
            out.write_all(b"\n")?;
        }
        for d in &self.invalid_documents {
            serde_json::to_writer(&mut out, &serde_json::json!({ "invalid_document": d }))?;
            out.write_all(b"\n")?;
        }
        let summary = Summary {
            summary: SummaryBody {
                candidate: &self.candidate,
                reference: &self.reference,
                inputs_tested: self.inputs_tested,
                scalars_tested: self.scalars_tested,
                mismatches: self.mismatches.len(),
                invalid_documents: self.invalid_documents.len(),
                seed: self.seed,
                passed: self.passed(),
            },
        };
        serde_json::to_writer(&mut out, &summary)?;
        out.write_all(b"\n")
    }

    fn merge(&mut self, other: DiffReport) {
        self.inputs_tested += other.inputs_tested;
        self.scalars_tested += other.scalars_tested;
        self.mismatches.extend(other.mismatches);
        self.invalid_documents.extend(other.invalid_documents);
    }
}

fn first_divergence(a: &[usize], b: &[usize]) -> usize {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return (*x).min(*y);
        }
    }
    match (a.get(b.len()), b.get(a.len())) {
        (Some(x), _) | (_, Some(x)) => *x,
        _ => 0,
    }
}

fn excerpt(text: &str, offset: usize) -> String {
    let mut start = offset.saturating_sub(EXCERPT_RADIUS);
    while !text.is_char_boundary(start) {
        start -= 1;
    }
    let mut end = (offset + EXCERPT_RADIUS).min(text.len());
    while !text.is_char_boundary(end) {
        end += 1;
    }
    text[start..end].to_string()
}

fn boundary_lists(
    text: &str,
    candidate: &dyn Splitter,
    reference: &dyn Splitter,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let c = candidate.split(text).ok()?;
    let r = reference.split(text).ok()?;
    Some((boundaries(&c), boundaries(&r)))
}

fn disagrees(text: &str, candidate: &dyn Splitter, reference: &dyn Splitter) -> bool {
    matches!(boundary_lists(text, candidate, reference), Some((c, r)) if c != r)
}

/// Compares the two splitters on one input.
pub fn diff_one(
    index: usize,
    text: &str,
    candidate: &dyn Splitter,
    reference: &dyn Splitter,
) -> Result<Option<Mismatch>, DiffError> {
    let r: Vec<Segment> = reference
        .split(text)
        .map_err(|source| DiffError::Reference { index, source })?;
    let c: Vec<Segment> = candidate
        .split(text)
        .map_err(|source| DiffError::Candidate { index, source })?;
    if c == r {
        return Ok(None);
    }
    let (cb, rb) = (boundaries(&c), boundaries(&r));
    let offset = first_divergence(&cb, &rb);

    // Start shrinking from a window around the divergence when that window
    // alone still reproduces; long documents shrink much faster that way.
    let window = {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let at = chars.partition_point(|&(i, _)| i < offset);
        let lo = at.saturating_sub(SHRINK_WINDOW);
        let hi = (at + SHRINK_WINDOW).min(chars.len());
        let start = chars.get(lo).map_or(text.len(), |&(i, _)| i);
        let end = chars.get(hi).map_or(text.len(), |&(i, _)| i);
        &text[start..end]
    };
    let seed_input = if disagrees(window, candidate, reference) {
        window
    } else {
        text
    };
    let reproducer = minimize(seed_input, |s| disagrees(s, candidate, reference));
    let (candidate_boundaries, reference_boundaries) =
        boundary_lists(&reproducer, candidate, reference).unwrap_or_default();

    Ok(Some(Mismatch {
        index,
        excerpt: excerpt(text, offset),
        first_divergent_offset: offset,
        reproducer,
        candidate_boundaries,
        reference_boundaries,
    }))
}

/// Diffs every document. Invalid UTF-8 documents are recorded and skipped;
/// a reference failure aborts.
pub fn diff_corpus_with<D>(
    documents: &[D],
    candidate: &dyn Splitter,
    reference: &dyn Splitter,
) -> Result<DiffReport, DiffError>
where
    D: AsRef<[u8]> + Sync,
{
    let partials: Vec<Result<DiffReport, DiffError>> = documents
        .par_iter()
        .enumerate()
        .map(|(index, doc)| {
            let mut part = DiffReport::default();
            match std::str::from_utf8(doc.as_ref()) {
                Err(e) => part.invalid_documents.push(InvalidDocument {
                    index,
                    valid_up_to: e.valid_up_to(),
                }),
                Ok(text) => {
                    part.inputs_tested = 1;
                    part.scalars_tested = text.chars().count();
                    part.mismatches
                        .extend(diff_one(index, text, candidate, reference)?);
                }
            }
            Ok(part)
        })
        .collect();

    let mut report = DiffReport {
        candidate: candidate.name().to_string(),
        reference: reference.name().to_string(),
        ..DiffReport::default()
    };
    for part in partials {
        report.merge(part?);
    }
    report.mismatches.sort_by_key(|m| m.index);
    Ok(report)
}

/// Diffs peek2 against the oracle on every document.
pub fn diff_corpus<D>(documents: &[D]) -> Result<DiffReport, DiffError>
where
    D: AsRef<[u8]> + Sync,
{
    diff_corpus_with(documents, &Peek2::new(), Oracle::global())
}

/// Generates `config.case_count` cases and diffs them.
pub fn fuzz_with(
    config: &FuzzConfig,
    candidate: &dyn Splitter,
    reference: &dyn Splitter,
) -> Result<DiffReport, DiffError> {
    let generator = CaseGenerator::new(config).map_err(DiffError::Config)?;
    let totals = (0..config.case_count)
        .into_par_iter()
        .try_fold(DiffReport::default, |mut acc, index| {
            let text = generator.case(index as u64);
            acc.inputs_tested += 1;
            acc.scalars_tested += text.chars().count();
            acc.mismatches
                .extend(diff_one(index, &text, candidate, reference)?);
            Ok::<_, DiffError>(acc)
        })
        .try_reduce(DiffReport::default, |mut a, b| {
            a.merge(b);
            Ok(a)
        })?;

    let mut report = DiffReport {
        candidate: candidate.name().to_string(),
        reference: reference.name().to_string(),
        seed: Some(config.seed),
        ..DiffReport::default()
    };
    report.merge(totals);
    report.mismatches.sort_by_key(|m| m.index);
    Ok(report)
}

/// Fuzzes peek2 against the oracle.
pub fn fuzz(config: &FuzzConfig) -> Result<DiffReport, DiffError> {
    fuzz_with(config, &Peek2::new(), Oracle::global())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::split::{Branch, Category, DecisionTable};

    fn broken() -> Peek2 {
        Peek2::with_table(DecisionTable::CL100K.with_cell(
            Category::Space,
            Category::Letter,
            Branch::Whitespace,
        ))
    }

    #[test]
    fn divergence_offset() {
        assert_eq!(first_divergence(&[1, 3, 5], &[1, 4, 5]), 3);
        assert_eq!(first_divergence(&[1, 3], &[1, 3, 7]), 7);
        assert_eq!(first_divergence(&[1, 3, 9], &[1, 3]), 9);
    }

    #[test]
    fn agreeing_corpus_has_no_mismatches() {
        let docs = [
            "Lorem ipsum dolor sit amet.",
            "12345678",
            "'Does it work?\u{2019} She asked.",
        ];
        let report = diff_corpus(&docs).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches);
        assert_eq!(report.inputs_tested, 3);
    }

    #[test]
    fn broken_table_is_caught_and_shrunk() {
        let docs = ["fine", "Lorem ipsum dolor sit amet."];
        let report = diff_corpus_with(&docs, &broken(), Oracle::global()).unwrap();
        assert_eq!(report.mismatches.len(), 1);
        let m = &report.mismatches[0];
        assert_eq!(m.index, 1);
        assert_eq!(m.first_divergent_offset, 6);
        assert_eq!(m.reproducer.chars().count(), 2);
        assert!(m.reproducer.starts_with(' '));
        assert!(disagrees(&m.reproducer, &broken(), Oracle::global()));
        assert_ne!(m.candidate_boundaries, m.reference_boundaries);
    }

    #[test]
    fn invalid_documents_are_recorded() {
        let docs: Vec<&[u8]> = vec![b"ok", b"bad\xFF"];
        let report = diff_corpus(&docs).unwrap();
        assert_eq!(report.inputs_tested, 1);
        assert_eq!(
            report.invalid_documents,
            vec![InvalidDocument {
                index: 1,
                valid_up_to: 3
            }]
        );
        assert!(report.passed());
    }

    #[test]
    fn fuzz_is_deterministic_and_clean() {
        let cfg = FuzzConfig {
            case_count: 3000,
            ..FuzzConfig::default()
        };
        let a = fuzz(&cfg).unwrap();
        let b = fuzz(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.passed(), "{:?}", a.mismatches.first());
        assert_eq!(a.seed, Some(0));
        assert_eq!(a.inputs_tested, 3000);
    }

    #[test]
    fn fuzz_quotes_and_letters() {
        let report = fuzz(&FuzzConfig::quotes_and_letters(7, 3000)).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches.first());
    }

    #[test]
    fn fuzz_catches_broken_table() {
        let cfg = FuzzConfig {
            case_count: 500,
            ..FuzzConfig::default()
        };
        let report = fuzz_with(&cfg, &broken(), Oracle::global()).unwrap();
        assert!(!report.passed());
        for m in &report.mismatches {
            assert!(disagrees(&m.reproducer, &broken(), Oracle::global()));
            assert!(m.reproducer.chars().count() <= 3, "{:?}", m.reproducer);
        }
    }

    #[test]
    fn jsonl_ends_with_summary() {
        let report = diff_corpus_with(&["a b"], &broken(), Oracle::global()).unwrap();
        let mut buf = Vec::new();
        report.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(first["mismatch"]["reproducer"], " b");
        let last: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(last["summary"]["passed"], false);
        assert_eq!(last["summary"]["mismatches"], 1);
    }
}
