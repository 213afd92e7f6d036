//! Table generation from the Unicode Character Database text files.
//!
//! Consumes `UnicodeData.txt`, `PropList.txt` and `CaseFolding.txt` and
//! renders the Rust source checked in as `tables.rs`, plus a SHA-256
//! manifest of inputs and output. Nothing here runs at pretokenization time.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

/// Letters that participate in the contraction alternative `(?i:[sdmt]|ll|ve|re)`.
pub const CONTRACTION_LETTERS: [char; 8] = ['d', 'e', 'l', 'm', 'r', 's', 't', 'v'];

/// File names the generator reads from a UCD directory.
pub const UCD_FILES: [&str; 3] = ["UnicodeData.txt", "PropList.txt", "CaseFolding.txt"];

#[derive(Debug, thiserror::Error)]
pub enum UcdError {
    #[error("{file}:{line}: {message}")]
    Parse {
        file: &'static str,
        line: usize,
        message: String,
    },
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Inclusive scalar range.
pub type Range = (u32, u32);

/// The extracted class tables, before rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarClassTables {
    pub letter_ranges: Vec<Range>,
    pub number_ranges: Vec<Range>,
    pub whitespace_ranges: Vec<Range>,
    /// Non-ASCII scalars whose simple case folding class contains one of
    /// [`CONTRACTION_LETTERS`], paired with that ASCII letter.
    pub contraction_folds: Vec<(u32, char)>,
    pub unicode_version: String,
}

/// Raw contents of the three UCD input files.
#[derive(Debug, Clone)]
pub struct UcdSources {
    pub unicode_data: String,
    pub prop_list: String,
    pub case_folding: String,
}

impl UcdSources {
    pub fn read_dir(dir: impl AsRef<Path>) -> Result<Self, UcdError> {
        let dir = dir.as_ref();
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|source| UcdError::Io {
                path: path.display().to_string(),
                source,
            })
        };
        Ok(UcdSources {
            unicode_data: read(UCD_FILES[0])?,
            prop_list: read(UCD_FILES[1])?,
            case_folding: read(UCD_FILES[2])?,
        })
    }

    fn texts(&self) -> [(&'static str, &str); 3] {
        [
            (UCD_FILES[0], self.unicode_data.as_str()),
            (UCD_FILES[1], self.prop_list.as_str()),
            (UCD_FILES[2], self.case_folding.as_str()),
        ]
    }
}

fn parse_hex(file: &'static str, line: usize, s: &str) -> Result<u32, UcdError> {
    u32::from_str_radix(s.trim(), 16).map_err(|e| UcdError::Parse {
        file,
        line,
        message: format!("bad code point {s:?}: {e}"),
    })
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

/// Sorts and coalesces overlapping or adjacent ranges.
pub fn coalesce(mut ranges: Vec<Range>) -> Vec<Range> {
    ranges.sort_unstable();
    let mut out: Vec<Range> = Vec::with_capacity(ranges.len());
    for (lo, hi) in ranges {
        match out.last_mut() {
            Some(last) if lo <= last.1.saturating_add(1) => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Returns `(letter_ranges, number_ranges)` from `UnicodeData.txt`.
pub fn parse_unicode_data(text: &str) -> Result<(Vec<Range>, Vec<Range>), UcdError> {
    const FILE: &str = "UnicodeData.txt";
    let mut letters = Vec::new();
    let mut numbers = Vec::new();
    let mut pending_first: Option<(u32, String)> = None;

    for (line, body) in data_lines(text) {
        let fields: Vec<&str> = body.split(';').collect();
        if fields.len() < 3 {
            return Err(UcdError::Parse {
                file: FILE,
                line,
                message: "expected at least 3 fields".into(),
            });
        }
        let cp = parse_hex(FILE, line, fields[0])?;
        let name = fields[1];
        let gc = fields[2];

        let range = if name.ends_with(", First>") {
            pending_first = Some((cp, gc.to_string()));
            continue;
        } else if name.ends_with(", Last>") {
            match pending_first.take() {
                Some((first, first_gc)) if first_gc == gc => (first, cp),
                _ => {
                    return Err(UcdError::Parse {
                        file: FILE,
                        line,
                        message: "range end without matching start".into(),
                    })
                }
            }
        } else {
            (cp, cp)
        };

        match gc {
            "Lu" | "Ll" | "Lt" | "Lm" | "Lo" => letters.push(range),
            "Nd" | "Nl" | "No" => numbers.push(range),
            _ => {}
        }
    }
    if pending_first.is_some() {
        return Err(UcdError::Parse {
            file: FILE,
            line: text.lines().count(),
            message: "unterminated First/Last range".into(),
        });
    }
    Ok((coalesce(letters), coalesce(numbers)))
}

/// Ranges carrying `property` in `PropList.txt`.
pub fn parse_prop_list(text: &str, property: &str) -> Result<Vec<Range>, UcdError> {
    const FILE: &str = "PropList.txt";
    let mut out = Vec::new();
    for (line, body) in data_lines(text) {
        let (cps, prop) = body.split_once(';').ok_or_else(|| UcdError::Parse {
            file: FILE,
            line,
            message: "expected `range ; property`".into(),
        })?;
        if prop.trim() != property {
            continue;
        }
        let range = match cps.trim().split_once("..") {
            Some((lo, hi)) => (parse_hex(FILE, line, lo)?, parse_hex(FILE, line, hi)?),
            None => {
                let cp = parse_hex(FILE, line, cps)?;
                (cp, cp)
            }
        };
        out.push(range);
    }
    Ok(coalesce(out))
}

/// Non-ASCII members of the simple case folding classes of the contraction
/// letters. Uses the `C` and `S` mappings, which is what Unicode-aware
/// regex engines apply for `(?i)`.
pub fn parse_contraction_folds(text: &str) -> Result<Vec<(u32, char)>, UcdError> {
    const FILE: &str = "CaseFolding.txt";
    let mut folds_to: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (line, body) in data_lines(text) {
        let fields: Vec<&str> = body.split(';').map(str::trim).collect();
        if fields.len() < 3 {
            return Err(UcdError::Parse {
                file: FILE,
                line,
                message: "expected `code; status; mapping;`".into(),
            });
        }
        if fields[1] != "C" && fields[1] != "S" {
            continue;
        }
        let cp = parse_hex(FILE, line, fields[0])?;
        let target = parse_hex(FILE, line, fields[2])?;
        folds_to.entry(target).or_default().push(cp);
    }

    let mut out = Vec::new();
    for letter in CONTRACTION_LETTERS {
        // Every member of the class folds to the lowercase letter itself.
        for &cp in folds_to.get(&(letter as u32)).into_iter().flatten() {
            if cp >= 0x80 {
                out.push((cp, letter));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

impl ScalarClassTables {
    pub fn from_sources(sources: &UcdSources, unicode_version: &str) -> Result<Self, UcdError> {
        let (letter_ranges, number_ranges) = parse_unicode_data(&sources.unicode_data)?;
        Ok(ScalarClassTables {
            letter_ranges,
            number_ranges,
            whitespace_ranges: parse_prop_list(&sources.prop_list, "White_Space")?,
            contraction_folds: parse_contraction_folds(&sources.case_folding)?,
            unicode_version: unicode_version.to_string(),
        })
    }

    /// Renders the table module source.
    pub fn render_source(&self) -> String {
        let mut s = String::new();
        s.push_str("// DO NOT EDIT THIS FILE. IT WAS AUTOMATICALLY GENERATED BY:\n");
        s.push_str("//\n");
        let _ = writeln!(
            s,
            "//   cargo run --example generate_unicode_tables -- ucd/{}",
            self.unicode_version
        );
        s.push_str("//\n");
        let _ = writeln!(s, "// Unicode version: {}.\n", self.unicode_version);
        let _ = writeln!(
            s,
            "pub const UNICODE_VERSION: &str = \"{}\";\n",
            self.unicode_version
        );
        render_ranges(
            &mut s,
            "LETTER",
            "Lu | Ll | Lt | Lm | Lo",
            &self.letter_ranges,
        );
        render_ranges(&mut s, "NUMBER", "Nd | Nl | No", &self.number_ranges);
        render_ranges(
            &mut s,
            "WHITE_SPACE",
            "White_Space",
            &self.whitespace_ranges,
        );

        s.push_str("/// Non-ASCII scalars folding onto a contraction letter.\n");
        s.push_str("pub const CONTRACTION_FOLDS: &[(char, char)] = &[\n");
        for &(cp, letter) in &self.contraction_folds {
            let _ = writeln!(s, "    ('\\u{{{cp:X}}}', '{letter}'),");
        }
        s.push_str("];\n");
        s
    }
}

fn render_ranges(s: &mut String, name: &str, what: &str, ranges: &[Range]) {
    let _ = writeln!(s, "/// {what}");
    let _ = writeln!(s, "pub const {name}: &[(u32, u32)] = &[");
    for chunk in ranges.chunks(4) {
        s.push_str("   ");
        for (lo, hi) in chunk {
            let _ = write!(s, " (0x{lo:X}, 0x{hi:X}),");
        }
        s.push('\n');
    }
    s.push_str("];\n\n");
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// `sha256  name` lines for every input file and the rendered source.
pub fn checksum_manifest(sources: &UcdSources, rendered: &str) -> String {
    let mut out = String::new();
    for (name, text) in sources.texts() {
        let _ = writeln!(out, "{}  {}", sha256_hex(text.as_bytes()), name);
    }
    let _ = writeln!(out, "{}  tables.rs", sha256_hex(rendered.as_bytes()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coalesce_merges_adjacent_and_overlapping() {
        let got = coalesce(vec![(5, 6), (0, 2), (3, 4), (10, 12), (11, 15)]);
        assert_eq!(got, vec![(0, 6), (10, 15)]);
    }

    #[test]
    fn unicode_data_ranges_and_categories() {
        let text = "\
0030;DIGIT ZERO;Nd;0;EN;;0;0;0;N;;;;;
0041;LATIN CAPITAL LETTER A;Lu;0;L;;;;;N;;;;0061;
0042;LATIN CAPITAL LETTER B;Lu;0;L;;;;;N;;;;0062;
0300;COMBINING GRAVE ACCENT;Mn;230;NSM;;;;;N;;;;;
3400;<CJK Ideograph Extension A, First>;Lo;0;L;;;;;N;;;;;
4DBF;<CJK Ideograph Extension A, Last>;Lo;0;L;;;;;N;;;;;
";
        let (letters, numbers) = parse_unicode_data(text).unwrap();
        assert_eq!(letters, vec![(0x41, 0x42), (0x3400, 0x4DBF)]);
        assert_eq!(numbers, vec![(0x30, 0x30)]);
    }

    #[test]
    fn unmatched_range_is_an_error() {
        let text = "3400;<CJK Ideograph Extension A, First>;Lo;0;L;;;;;N;;;;;\n";
        assert!(parse_unicode_data(text).is_err());
    }

    #[test]
    fn prop_list_filters_property() {
        let text = "0009..000D    ; White_Space # Cc\n0020 ; White_Space\n002D ; Dash\n";
        assert_eq!(
            parse_prop_list(text, "White_Space").unwrap(),
            vec![(0x9, 0xD), (0x20, 0x20)]
        );
    }

    #[test]
    fn case_folding_keeps_simple_and_common_only() {
        let text = "0053; C; 0073;\n017F; C; 0073;\n1E9E; F; 0073 0073;\n212A; C; 006B;\n";
        assert_eq!(parse_contraction_folds(text).unwrap(), vec![(0x17F, 's')]);
    }
}
