//! Reference splitter: the cl100k pattern run by a backtracking regex engine.
//!
//! The pattern is matched repeatedly from offset 0; every match becomes one
//! segment. Some alternative matches at every position of every input, so a
//! position without a match means the engine dialect differs and is reported
//! as [`SplitError::OracleGap`] instead of being skipped.
//!
//! Backed by `fancy-regex`, which supports the possessive quantifiers, the
//! negative lookahead and the `$` anchor the pattern uses, with Unicode
//! classes from the same Unicode version as [`crate::unicode`].

use std::sync::OnceLock;

use fancy_regex::{Regex, RegexBuilder};

use crate::split::{Branch, Segment, SplitError, Splitter};

/// The split pattern, verbatim.
pub const CL100K_PATTERN: &str = r"'(?i:[sdmt]|ll|ve|re)|[^\r\n\p{L}\p{N}]?+\p{L}++|\p{N}{1,3}+| ?[^\s\p{L}\p{N}]++[\r\n]*+|\s++$|\s*[\r\n]|\s+(?!\S)|\s";

/// The pattern's top-level alternatives and the branch each belongs to.
pub const ALTERNATIVES: [(Branch, &str); 8] = [
    (Branch::Contraction, r"'(?i:[sdmt]|ll|ve|re)"),
    (Branch::Word, r"[^\r\n\p{L}\p{N}]?+\p{L}++"),
    (Branch::Number, r"\p{N}{1,3}+"),
    (Branch::Punctuation, r" ?[^\s\p{L}\p{N}]++[\r\n]*+"),
    (Branch::Whitespace, r"\s++$"),
    (Branch::Whitespace, r"\s*[\r\n]"),
    (Branch::Whitespace, r"\s+(?!\S)"),
    (Branch::Whitespace, r"\s"),
];

pub const ENGINE_NAME: &str = "fancy-regex";

// Long whitespace runs make `\s*[\r\n]` backtrack once per scalar.
const BACKTRACK_LIMIT: usize = 1 << 32;

/// Compiled reference splitter.
#[derive(Debug)]
pub struct Oracle {
    split: Regex,
    tagged: Regex,
}

fn compile(pattern: &str) -> Regex {
    RegexBuilder::new(pattern)
        .backtrack_limit(BACKTRACK_LIMIT)
        .build()
        .expect("cl100k pattern compiles")
}

/// [`CL100K_PATTERN`] with one capture group per alternative.
pub fn tagged_pattern() -> String {
    ALTERNATIVES
        .iter()
        .map(|(_, alt)| format!("({alt})"))
        .collect::<Vec<_>>()
        .join("|")
}

impl Oracle {
    pub fn new() -> Self {
        Oracle {
            split: compile(CL100K_PATTERN),
            tagged: compile(&tagged_pattern()),
        }
    }

    /// Shared instance, compiled on first use.
    pub fn global() -> &'static Oracle {
        static ORACLE: OnceLock<Oracle> = OnceLock::new();
        ORACLE.get_or_init(Oracle::new)
    }

    pub fn pattern(&self) -> &str {
        self.split.as_str()
    }

    pub fn unicode_version(&self) -> &'static str {
        crate::unicode::UNICODE_VERSION
    }

    /// Segments produced by repeated leftmost-first matching.
    pub fn oracle_split(&self, text: &str) -> Result<Vec<Segment>, SplitError> {
        let mut out = Vec::new();
        let mut pos = 0;
        while pos < text.len() {
            let m = self
                .split
                .find_from_pos(text, pos)
                .map_err(|e| SplitError::Engine {
                    offset: pos,
                    message: e.to_string(),
                })?;
            match m {
                Some(m) if m.start() == pos && m.end() > pos => {
                    out.push(Segment::new(pos, m.end()));
                    pos = m.end();
                }
                _ => return Err(SplitError::OracleGap { offset: pos }),
            }
        }
        Ok(out)
    }

    /// The first match at offset 0 and the index into [`ALTERNATIVES`] of the
    /// alternative that produced it.
    pub fn first_match(&self, text: &str) -> Result<Option<(usize, Segment)>, SplitError> {
        if text.is_empty() {
            return Ok(None);
        }
        let caps = self
            .tagged
            .captures_from_pos(text, 0)
            .map_err(|e| SplitError::Engine {
                offset: 0,
                message: e.to_string(),
            })?;
        let Some(caps) = caps else {
            return Err(SplitError::OracleGap { offset: 0 });
        };
        let whole = caps.get(0).expect("group 0 always present");
        if whole.start() != 0 {
            return Err(SplitError::OracleGap { offset: 0 });
        }
        let alt = (1..=ALTERNATIVES.len())
            .find(|&i| caps.get(i).is_some())
            .expect("one alternative participates in a match")
            - 1;
        Ok(Some((alt, Segment::new(0, whole.end()))))
    }

    /// Branch whose alternative produced the first match of `text`.
    pub fn first_branch(&self, text: &str) -> Result<Option<(Branch, Segment)>, SplitError> {
        Ok(self
            .first_match(text)?
            .map(|(alt, seg)| (ALTERNATIVES[alt].0, seg)))
    }
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new()
    }
}

impl Splitter for Oracle {
    fn name(&self) -> &str {
        "oracle"
    }

    fn split(&self, text: &str) -> Result<Vec<Segment>, SplitError> {
        self.oracle_split(text)
    }
}

/// Splits with the shared oracle.
pub fn oracle_split(text: &str) -> Result<Vec<Segment>, SplitError> {
    Oracle::global().oracle_split(text)
}
