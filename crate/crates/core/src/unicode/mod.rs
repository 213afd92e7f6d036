//! Unicode scalar properties used by the splitter and shared with the oracle.
//!
//! `\p{L}`, `\p{N}` and `\s` are the general categories L*, N* and the
//! `White_Space` property of [`UNICODE_VERSION`]. The tables in `tables.rs`
//! are generated by [`ucd`] and checked in.

use std::sync::OnceLock;

#[rustfmt::skip]
mod tables;
pub mod ucd;

pub use tables::UNICODE_VERSION;

/// Coarse property class of a scalar. The three named classes are disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum ScalarClass {
    Other = 0,
    Letter = 1,
    Number = 2,
    WhiteSpace = 3,
}

impl ScalarClass {
    const fn from_u8(v: u8) -> ScalarClass {
        match v {
            1 => ScalarClass::Letter,
            2 => ScalarClass::Number,
            3 => ScalarClass::WhiteSpace,
            _ => ScalarClass::Other,
        }
    }
}

fn in_ranges(ranges: &[(u32, u32)], cp: u32) -> bool {
    ranges
        .binary_search_by(|&(lo, hi)| {
            if hi < cp {
                std::cmp::Ordering::Less
            } else if lo > cp {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        })
        .is_ok()
}

fn class_by_search(cp: u32) -> ScalarClass {
    if in_ranges(tables::LETTER, cp) {
        ScalarClass::Letter
    } else if in_ranges(tables::NUMBER, cp) {
        ScalarClass::Number
    } else if in_ranges(tables::WHITE_SPACE, cp) {
        ScalarClass::WhiteSpace
    } else {
        ScalarClass::Other
    }
}

// Flat lookup for the Basic Multilingual Plane, filled from the range tables
// on first use.
fn bmp_table() -> &'static [u8; 0x10000] {
    static BMP: OnceLock<Box<[u8; 0x10000]>> = OnceLock::new();
    BMP.get_or_init(|| {
        let mut table = Box::new([0u8; 0x10000]);
        for (ranges, class) in [
            (tables::LETTER, ScalarClass::Letter),
            (tables::NUMBER, ScalarClass::Number),
            (tables::WHITE_SPACE, ScalarClass::WhiteSpace),
        ] {
            for &(lo, hi) in ranges {
                if lo > 0xFFFF {
                    break;
                }
                for cp in lo..=hi.min(0xFFFF) {
                    table[cp as usize] = class as u8;
                }
            }
        }
        table
    })
}

const fn ascii_class(b: u8) -> ScalarClass {
    match b {
        b'a'..=b'z' | b'A'..=b'Z' => ScalarClass::Letter,
        b'0'..=b'9' => ScalarClass::Number,
        b' ' | b'\t'..=b'\r' => ScalarClass::WhiteSpace,
        _ => ScalarClass::Other,
    }
}

/// Property class of `c`.
#[inline]
pub fn class_of(c: char) -> ScalarClass {
    let cp = c as u32;
    if cp < 0x80 {
        ascii_class(cp as u8)
    } else if cp <= 0xFFFF {
        ScalarClass::from_u8(bmp_table()[cp as usize])
    } else {
        class_by_search(cp)
    }
}

/// The generated ranges behind a class (`Other` has none).
pub fn class_ranges(class: ScalarClass) -> &'static [(u32, u32)] {
    match class {
        ScalarClass::Letter => tables::LETTER,
        ScalarClass::Number => tables::NUMBER,
        ScalarClass::WhiteSpace => tables::WHITE_SPACE,
        ScalarClass::Other => &[],
    }
}

/// General category Lu, Ll, Lt, Lm or Lo.
pub fn is_letter(c: char) -> bool {
    class_of(c) == ScalarClass::Letter
}

/// General category Nd, Nl or No.
pub fn is_number(c: char) -> bool {
    class_of(c) == ScalarClass::Number
}

/// The `White_Space` property; this is what `\s` means throughout the crate.
pub fn is_whitespace(c: char) -> bool {
    class_of(c) == ScalarClass::WhiteSpace
}

/// Maps `c` to the lowercase ASCII contraction letter it case-folds to
/// (one of `d e l m r s t v`), if any.
#[inline]
pub fn contraction_fold(c: char) -> Option<u8> {
    if c.is_ascii() {
        let lower = (c as u8).to_ascii_lowercase();
        return matches!(lower, b'd' | b'e' | b'l' | b'm' | b'r' | b's' | b't' | b'v')
            .then_some(lower);
    }
    tables::CONTRACTION_FOLDS
        .iter()
        .find(|&&(scalar, _)| scalar == c)
        .map(|&(_, letter)| letter as u8)
}

/// The checked-in tables in the generator's shape.
pub fn pinned_tables() -> ucd::ScalarClassTables {
    ucd::ScalarClassTables {
        letter_ranges: tables::LETTER.to_vec(),
        number_ranges: tables::NUMBER.to_vec(),
        whitespace_ranges: tables::WHITE_SPACE.to_vec(),
        contraction_folds: tables::CONTRACTION_FOLDS
            .iter()
            .map(|&(s, l)| (s as u32, l))
            .collect(),
        unicode_version: UNICODE_VERSION.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters() {
        assert!(is_letter('A'));
        assert!(!is_letter('1'));
        assert!(is_letter('中'));
        assert!(is_letter('é'));
        assert!(is_letter('\u{1D400}')); // MATHEMATICAL BOLD CAPITAL A
        assert!(!is_letter('\u{0301}')); // combining acute is Mn
    }

    #[test]
    fn numbers() {
        assert!(is_number('7'));
        assert!(!is_number('A'));
        assert!(is_number('\u{0663}'));
        assert!(is_number('\u{00BD}')); // No
        assert!(is_number('\u{2167}')); // Nl, ROMAN NUMERAL EIGHT
        assert!(is_number('\u{1D7CE}')); // astral Nd
    }

    #[test]
    fn whitespace() {
        assert!(is_whitespace(' '));
        assert!(!is_whitespace('\u{200B}'));
        assert!(is_whitespace('\u{3000}'));
        assert!(is_whitespace('\u{0085}'));
        assert!(is_whitespace('\u{000B}'));
        assert!(!is_whitespace('\u{FEFF}'));
    }

    #[test]
    fn required_whitespace_members() {
        for c in [
            ' ', '\t', '\n', '\r', '\u{A0}', '\u{2028}', '\u{2029}', '\u{3000}',
        ] {
            assert_eq!(class_of(c), ScalarClass::WhiteSpace, "{:?}", c);
        }
    }

    #[test]
    fn bmp_fast_path_matches_search() {
        for cp in 0x80u32..=0xFFFF {
            if let Some(c) = char::from_u32(cp) {
                assert_eq!(class_of(c), class_by_search(cp), "U+{cp:04X}");
            }
        }
        for b in 0u8..0x80 {
            assert_eq!(ascii_class(b), class_by_search(b as u32), "{b:#x}");
        }
    }

    #[test]
    fn range_tables_are_coalesced_and_disjoint() {
        for table in [tables::LETTER, tables::NUMBER, tables::WHITE_SPACE] {
            for w in table.windows(2) {
                assert!(w[0].0 <= w[0].1);
                assert!(w[0].1 + 1 < w[1].0, "{:X?} then {:X?}", w[0], w[1]);
            }
        }
        for &(lo, hi) in tables::NUMBER.iter().chain(tables::WHITE_SPACE) {
            for cp in lo..=hi {
                assert!(!in_ranges(tables::LETTER, cp));
            }
        }
        for &(lo, hi) in tables::WHITE_SPACE {
            for cp in lo..=hi {
                assert!(!in_ranges(tables::NUMBER, cp));
            }
        }
    }

    #[test]
    fn contraction_folding() {
        assert_eq!(contraction_fold('S'), Some(b's'));
        assert_eq!(contraction_fold('v'), Some(b'v'));
        assert_eq!(contraction_fold('x'), None);
        assert_eq!(contraction_fold('\u{017F}'), Some(b's'));
        assert_eq!(contraction_fold('\u{212A}'), None);
    }
}
