//! The regex-free splitter.
//!
//! Two scalars of lookahead pick one of five branch routines through a
//! [`DecisionTable`]; the routine consumes one segment and the loop moves on.
//! Every scalar is read a bounded number of times and the cursor never moves
//! backwards, so a pass over `n` bytes is `O(n)`.

mod branch;
mod category;
mod table;

use std::ops::Range;

use serde::{Deserialize, Serialize};

pub use category::{peek_categorize, Category};
pub use table::{decide_branch, Branch, DecisionTable};

use branch::{run_branch, Counting, NoCount, ReadCounter, Scanner};

/// Byte range `[start, end)` of one pretoken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub const fn new(start: usize, end: usize) -> Self {
        Segment { start, end }
    }

    pub const fn len(&self) -> usize {
        self.end - self.start
    }

    pub const fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub const fn range(&self) -> Range<usize> {
        self.start..self.end
    }

    /// The segment's text in `source`.
    pub fn text<'a>(&self, source: &'a str) -> &'a str {
        &source[self.range()]
    }
}

impl From<Range<usize>> for Segment {
    fn from(r: Range<usize>) -> Self {
        Segment::new(r.start, r.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("input is not valid UTF-8 (first bad byte at offset {valid_up_to})")]
    InvalidUtf8 { valid_up_to: usize },
    #[error("oracle found no match at byte offset {offset}")]
    OracleGap { offset: usize },
    #[error("regex engine failure at byte offset {offset}: {message}")]
    Engine { offset: usize, message: String },
}

impl From<std::str::Utf8Error> for SplitError {
    fn from(e: std::str::Utf8Error) -> Self {
        SplitError::InvalidUtf8 {
            valid_up_to: e.valid_up_to(),
        }
    }
}

/// Anything that cuts text into tiling segments.
pub trait Splitter: Send + Sync {
    fn name(&self) -> &str;

    fn split(&self, text: &str) -> Result<Vec<Segment>, SplitError>;

    fn split_bytes(&self, bytes: &[u8]) -> Result<Vec<Segment>, SplitError> {
        self.split(std::str::from_utf8(bytes)?)
    }
}

/// The table-driven splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Peek2 {
    table: DecisionTable,
}

impl Peek2 {
    pub const fn new() -> Self {
        Peek2 {
            table: DecisionTable::CL100K,
        }
    }

    /// A splitter driven by a different table. Only useful for testing that
    /// the conformance checks notice a wrong table.
    pub const fn with_table(table: DecisionTable) -> Self {
        Peek2 { table }
    }

    pub fn table(&self) -> &DecisionTable {
        &self.table
    }

    pub fn segments<'a>(&self, text: &'a str) -> Segments<'a> {
        Segments {
            scanner: Scanner::new(text, NoCount),
            table: self.table,
            pos: 0,
        }
    }

    /// Total scalar decodes performed while segmenting `text`.
    pub fn count_scalar_reads(&self, text: &str) -> usize {
        let scanner = Scanner::new(text, Counting::default());
        let mut pos = 0;
        while pos < scanner.len() {
            pos = step(&self.table, &scanner, pos);
        }
        scanner.into_reads().0.get()
    }
}

impl Splitter for Peek2 {
    fn name(&self) -> &str {
        "peek2"
    }

    fn split(&self, text: &str) -> Result<Vec<Segment>, SplitError> {
        Ok(self.segments(text).collect())
    }
}

#[inline]
fn step<R: ReadCounter>(table: &DecisionTable, scanner: &Scanner<'_, R>, pos: usize) -> usize {
    let Some((c0, after_first)) = scanner.at(pos) else {
        return pos;
    };
    let first = peek_categorize(c0);
    let second = scanner
        .at(after_first)
        .map_or(Category::Eos, |(c1, _)| peek_categorize(c1));
    let end = run_branch(table.decide(first, second), scanner, pos);
    // Only a non-cl100k table can stall a routine.
    if end > pos {
        end
    } else {
        after_first
    }
}

/// Lazily produced segments of one input.
pub struct Segments<'a> {
    scanner: Scanner<'a, NoCount>,
    table: DecisionTable,
    pos: usize,
}

impl Iterator for Segments<'_> {
    type Item = Segment;

    #[inline]
    fn next(&mut self) -> Option<Segment> {
        if self.pos >= self.scanner.len() {
            return None;
        }
        let start = self.pos;
        self.pos = step(&self.table, &self.scanner, start);
        Some(Segment::new(start, self.pos))
    }
}

impl std::iter::FusedIterator for Segments<'_> {}

/// Segments of `text` under the cl100k table.
pub fn pretokenize(text: &str) -> Segments<'_> {
    Peek2::new().segments(text)
}

/// Like [`pretokenize`], validating the bytes first.
pub fn pretokenize_bytes(bytes: &[u8]) -> Result<Segments<'_>, SplitError> {
    Ok(pretokenize(std::str::from_utf8(bytes)?))
}

/// The segment texts of `text`, in order.
pub fn pretokenize_strings(text: &str) -> Vec<&str> {
    pretokenize(text).map(|s| s.text(text)).collect()
}

/// Checks that `segments` are non-empty, contiguous, on scalar boundaries and
/// cover all of `text`.
pub fn check_tiling(text: &str, segments: &[Segment]) -> Result<(), String> {
    let mut expected_start = 0;
    for (i, seg) in segments.iter().enumerate() {
        if seg.start != expected_start {
            return Err(format!(
                "segment {i} starts at {} not {expected_start}",
                seg.start
            ));
        }
        if seg.end <= seg.start {
            return Err(format!("segment {i} is empty"));
        }
        if !text.is_char_boundary(seg.end) || seg.end > text.len() {
            return Err(format!(
                "segment {i} ends off a scalar boundary at {}",
                seg.end
            ));
        }
        expected_start = seg.end;
    }
    if expected_start != text.len() {
        return Err(format!(
            "segments stop at {expected_start} of {}",
            text.len()
        ));
    }
    Ok(())
}

/// Offsets where one segment ends and the next begins (excluding 0 and the
/// input length).
pub fn boundaries(segments: &[Segment]) -> Vec<usize> {
    match segments.split_last() {
        Some((_, init)) => init.iter().map(|s| s.end).collect(),
        None => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lorem() {
        assert_eq!(
            pretokenize_strings("Lorem ipsum dolor sit amet."),
            vec!["Lorem", " ipsum", " dolor", " sit", " amet", "."]
        );
    }

    #[test]
    fn empty() {
        assert_eq!(pretokenize("").count(), 0);
        assert!(pretokenize_strings("").is_empty());
    }

    #[test]
    fn contraction_bug_is_preserved() {
        assert_eq!(
            pretokenize_strings("'Does it work?\u{2019} She asked."),
            vec![
                "'D",
                "oes",
                " it",
                " work",
                "?\u{2019}",
                " She",
                " asked",
                "."
            ]
        );
    }

    #[test]
    fn digits_in_threes() {
        assert_eq!(pretokenize_strings("12345678"), vec!["123", "456", "78"]);
        assert_eq!(pretokenize_strings("a b"), vec!["a", " b"]);
    }

    #[test]
    fn whitespace_runs() {
        assert_eq!(pretokenize_strings("   word"), vec!["  ", " word"]);
        assert_eq!(pretokenize_strings("  \n  \nX"), vec!["  \n  \n", "X"]);
        assert_eq!(pretokenize_strings("a\n  "), vec!["a", "\n  "]);
        assert_eq!(pretokenize_strings(" 7"), vec![" ", "7"]);
        assert_eq!(pretokenize_strings(" "), vec![" "]);
    }

    #[test]
    fn offsets() {
        let segs: Vec<_> = pretokenize("12345678").map(|s| (s.start, s.end)).collect();
        assert_eq!(segs, vec![(0, 3), (3, 6), (6, 8)]);
    }

    #[test]
    fn invalid_utf8_is_rejected() {
        let err = pretokenize_bytes(b"ab\xFFcd").err().unwrap();
        assert_eq!(err, SplitError::InvalidUtf8 { valid_up_to: 2 });
        assert_eq!(
            Peek2::new().split_bytes(b"\xC3"),
            Err(SplitError::InvalidUtf8 { valid_up_to: 0 })
        );
    }

    #[test]
    fn any_table_still_tiles() {
        let text = "It's 12 o'clock!\r\n\t  Done 中文 ١٢٣ \u{3000}";
        for first in Category::SCALAR {
            for second in Category::COLUMNS {
                for branch in Branch::ALL {
                    let table = DecisionTable::CL100K.with_cell(first, second, branch);
                    let segs = Peek2::with_table(table).split(text).unwrap();
                    check_tiling(text, &segs).unwrap();
                }
            }
        }
    }

    #[test]
    fn read_count_is_linear() {
        let text = "hello world, it's 2024!\n\n".repeat(50);
        let reads = Peek2::new().count_scalar_reads(&text);
        let scalars = text.chars().count();
        assert!(reads <= 4 * scalars, "{reads} reads for {scalars} scalars");
    }

    #[test]
    fn boundaries_skip_ends() {
        let segs: Vec<_> = pretokenize("a b c").collect();
        assert_eq!(boundaries(&segs), vec![1, 3]);
        assert!(boundaries(&[]).is_empty());
    }
}
