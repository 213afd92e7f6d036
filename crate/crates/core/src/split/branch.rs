//! The five branch routines. Each takes the byte offset of the next segment
//! and returns the offset where that segment ends.
//!
//! Routines only inspect scalars at or after the cursor. With the cl100k
//! table every routine consumes at least one scalar; under an arbitrary table
//! a routine may return its input offset, and the caller forces progress.

use std::cell::Cell;

use super::category::{peek_categorize, Category};
use super::table::Branch;
use crate::unicode::{class_of, contraction_fold, ScalarClass};

pub(crate) trait ReadCounter {
    fn tick(&self);
}

pub(crate) struct NoCount;

impl ReadCounter for NoCount {
    #[inline(always)]
    fn tick(&self) {}
}

#[derive(Default)]
pub(crate) struct Counting(pub Cell<usize>);

impl ReadCounter for Counting {
    #[inline]
    fn tick(&self) {
        self.0.set(self.0.get() + 1);
    }
}

/// Scalar reader over a valid UTF-8 buffer.
pub(crate) struct Scanner<'a, R> {
    bytes: &'a [u8],
    reads: R,
}

impl<'a, R: ReadCounter> Scanner<'a, R> {
    pub fn new(text: &'a str, reads: R) -> Self {
        Scanner {
            bytes: text.as_bytes(),
            reads,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn into_reads(self) -> R {
        self.reads
    }

    /// Scalar starting at `pos` and the offset just past it.
    #[inline]
    pub fn at(&self, pos: usize) -> Option<(char, usize)> {
        let b0 = *self.bytes.get(pos)?;
        self.reads.tick();
        if b0 < 0x80 {
            return Some((b0 as char, pos + 1));
        }
        let (len, init) = if b0 < 0xE0 {
            (2, u32::from(b0 & 0x1F))
        } else if b0 < 0xF0 {
            (3, u32::from(b0 & 0x0F))
        } else {
            (4, u32::from(b0 & 0x07))
        };
        let cp = self.bytes[pos + 1..pos + len]
            .iter()
            .fold(init, |acc, &b| (acc << 6) | u32::from(b & 0x3F));
        // The buffer came from a `&str`, so this is a scalar value.
        char::from_u32(cp).map(|c| (c, pos + len))
    }

    #[inline]
    fn run_while(&self, mut pos: usize, pred: impl Fn(char) -> bool) -> usize {
        while let Some((c, next)) = self.at(pos) {
            if !pred(c) {
                break;
            }
            pos = next;
        }
        pos
    }
}

#[inline]
pub(crate) fn run_branch<R: ReadCounter>(branch: Branch, s: &Scanner<'_, R>, pos: usize) -> usize {
    match branch {
        Branch::Contraction => contraction(s, pos),
        Branch::Word => word(s, pos),
        Branch::Number => number(s, pos),
        Branch::Punctuation => punctuation(s, pos),
        Branch::Whitespace => whitespace(s, pos),
    }
}

/// `'` followed by a letter folding to s/d/m/t, or a pair folding to
/// ll/ve/re. Single letters are tried first. Anything else is a word with the
/// quote as its left-snapped scalar.
pub(crate) fn contraction<R: ReadCounter>(s: &Scanner<'_, R>, pos: usize) -> usize {
    if let Some(('\'', p1)) = s.at(pos) {
        if let Some((c1, p2)) = s.at(p1) {
            match contraction_fold(c1) {
                Some(b's' | b'd' | b'm' | b't') => return p2,
                Some(first @ (b'l' | b'v' | b'r')) => {
                    if let Some((c2, p3)) = s.at(p2) {
                        let pair = (first, contraction_fold(c2));
                        if matches!(pair, (b'l', Some(b'l')) | (b'v' | b'r', Some(b'e'))) {
                            return p3;
                        }
                    }
                }
                _ => {}
            }
        }
    }
    word(s, pos)
}

/// Optional snap scalar (anything but CR, LF, letters and numbers), then the
/// maximal letter run.
pub(crate) fn word<R: ReadCounter>(s: &Scanner<'_, R>, pos: usize) -> usize {
    let Some((c0, next)) = s.at(pos) else {
        return pos;
    };
    let letters_from = match peek_categorize(c0) {
        Category::Letter => pos,
        Category::LineFeed | Category::Number => return pos,
        _ => next,
    };
    s.run_while(letters_from, |c| class_of(c) == ScalarClass::Letter)
}

/// One to three number scalars.
pub(crate) fn number<R: ReadCounter>(s: &Scanner<'_, R>, pos: usize) -> usize {
    let mut end = pos;
    for _ in 0..3 {
        match s.at(end) {
            Some((c, next)) if class_of(c) == ScalarClass::Number => end = next,
            _ => break,
        }
    }
    end
}

/// Optional leading space, the maximal run of scalars that are not
/// whitespace, letters or numbers, then any trailing CR/LF.
pub(crate) fn punctuation<R: ReadCounter>(s: &Scanner<'_, R>, pos: usize) -> usize {
    let start = match s.at(pos) {
        Some((' ', next)) => next,
        _ => pos,
    };
    let body_end = s.run_while(start, |c| class_of(c) == ScalarClass::Other);
    if body_end == start {
        return pos;
    }
    s.run_while(body_end, |c| c == '\r' || c == '\n')
}

/// Whitespace run `W` at the cursor:
/// all of `W` at end of input; else through the last CR/LF in `W`;
/// else `W` minus its last scalar when `|W| >= 2`; else the one scalar.
pub(crate) fn whitespace<R: ReadCounter>(s: &Scanner<'_, R>, pos: usize) -> usize {
    let mut end = pos;
    let mut last_start = pos;
    let mut count = 0usize;
    let mut after_last_break = None;
    while let Some((c, next)) = s.at(end) {
        if class_of(c) != ScalarClass::WhiteSpace {
            break;
        }
        if c == '\r' || c == '\n' {
            after_last_break = Some(next);
        }
        last_start = end;
        end = next;
        count += 1;
    }
    if count == 0 || end == s.len() {
        return end;
    }
    if let Some(e) = after_last_break {
        return e;
    }
    if count >= 2 {
        last_start
    } else {
        end
    }
}
