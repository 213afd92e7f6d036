use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::split::{peek_categorize, Category};
use crate::unicode::{class_ranges, ScalarClass};

/// Edge scalars where regex dialects and Unicode versions tend to disagree.
pub const BOUNDARY_ALPHABET: &[char] = &[
    '\'', '\u{2019}', '\u{017F}', '\u{212A}', '\u{00A0}', '\u{2028}', '\u{2029}', '\u{3000}',
    '\u{000B}', '\u{000C}', '\u{0085}', '\u{0301}', '\u{0308}', '\u{093F}', '\u{20DD}', '\u{2167}',
    '\u{00BD}', '\u{00B2}', '\u{3007}', '\u{16EE}', '\u{200B}', '\u{FEFF}',
];

const OTHER_POOL: &[char] = &[
    '!',
    '"',
    '#',
    '$',
    '%',
    '&',
    '(',
    ')',
    '*',
    '+',
    ',',
    '-',
    '.',
    '/',
    ':',
    ';',
    '<',
    '=',
    '>',
    '?',
    '@',
    '[',
    '\\',
    ']',
    '^',
    '_',
    '`',
    '{',
    '|',
    '}',
    '~',
    '\u{2019}',
    '\u{201C}',
    '\u{201D}',
    '\u{2026}',
    '\u{2014}',
    '\u{20AC}',
    '\u{00A9}',
    '\u{0000}',
    '\u{007F}',
    '\u{00AD}',
    '\u{1F600}',
    '\u{1F389}',
    '\u{3001}',
    '\u{3002}',
    '\u{FF0C}',
];

const LETTER_POOL: &[char] = &[
    's', 'd', 'm', 't', 'l', 'v', 'r', 'e', 'S', 'D', 'M', 'T', 'L', 'V', 'R', 'E', 'a', 'x', 'Z',
    'é', 'ß', '中', 'Ж', 'ا', 'ſ', 'K', 'ǅ', 'ʰ', 'ª',
];

const WHITESPACE_POOL: &[char] = &[
    '\t', '\u{000B}', '\u{000C}', '\u{0085}', '\u{00A0}', '\u{1680}', '\u{2000}', '\u{2007}',
    '\u{200A}', '\u{2028}', '\u{2029}', '\u{202F}', '\u{205F}', '\u{3000}',
];

const NUMBER_POOL: &[char] = &[
    '0',
    '1',
    '2',
    '5',
    '7',
    '9',
    '٣',
    '٤',
    '²',
    '½',
    'Ⅷ',
    '〇',
    '७',
    '\u{1D7CE}',
];

/// Fuzzer parameters. `category_weights` index the seven peek categories
/// followed by [`BOUNDARY_ALPHABET`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub case_count: usize,
    /// Maximum scalars per case.
    pub max_len: usize,
    pub category_weights: [f64; 8],
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            case_count: 100_000,
            max_len: 64,
            category_weights: [3.0, 3.0, 2.0, 1.0, 6.0, 1.0, 2.0, 2.0],
        }
    }
}

impl FuzzConfig {
    /// Mostly quotes and letters, which keeps the contraction fallback busy.
    pub fn quotes_and_letters(seed: u64, case_count: usize) -> Self {
        FuzzConfig {
            seed,
            case_count,
            max_len: 16,
            category_weights: [0.5, 0.5, 4.0, 0.0, 6.0, 0.0, 0.5, 0.5],
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self
            .category_weights
            .iter()
            .any(|w| !w.is_finite() || *w < 0.0)
        {
            return Err("category weights must be finite and non-negative".into());
        }
        if !self.category_weights.iter().any(|w| *w > 0.0) {
            return Err("at least one category weight must be positive".into());
        }
        Ok(())
    }
}

/// Deterministic case source: case `i` depends only on `(seed, i)`.
#[derive(Debug, Clone)]
pub struct CaseGenerator {
    seed: u64,
    max_len: usize,
    buckets: WeightedIndex<f64>,
}

impl CaseGenerator {
    pub fn new(config: &FuzzConfig) -> Result<Self, String> {
        config.validate()?;
        Ok(CaseGenerator {
            seed: config.seed,
            max_len: config.max_len,
            buckets: WeightedIndex::new(config.category_weights).map_err(|e| e.to_string())?,
        })
    }

    pub fn case(&self, index: u64) -> String {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let len = rng.random_range(0..=self.max_len);
        (0..len)
            .map(|_| {
                let bucket = self.buckets.sample(&mut rng);
                scalar_for_bucket(bucket, &mut rng)
            })
            .collect()
    }
}

fn pick(pool: &[char], rng: &mut impl Rng) -> char {
    pool[rng.random_range(0..pool.len())]
}

fn from_ranges(ranges: &[(u32, u32)], rng: &mut impl Rng) -> Option<char> {
    let (lo, hi) = ranges[rng.random_range(0..ranges.len())];
    char::from_u32(rng.random_range(lo..=hi))
}

fn scalar_for_bucket(bucket: usize, rng: &mut impl Rng) -> char {
    match bucket {
        0 => {
            if rng.random_bool(0.7) {
                return pick(OTHER_POOL, rng);
            }
            // Anything else in the BMP that lands in category 0.
            for _ in 0..32 {
                if let Some(c) = char::from_u32(rng.random_range(0x80..0x10000)) {
                    if peek_categorize(c) == Category::Other {
                        return c;
                    }
                }
            }
            '#'
        }
        1 => ' ',
        2 => '\'',
        3 => {
            if rng.random_bool(0.5) {
                '\n'
            } else {
                '\r'
            }
        }
        4 => {
            if rng.random_bool(0.7) {
                pick(LETTER_POOL, rng)
            } else {
                from_ranges(class_ranges(ScalarClass::Letter), rng).unwrap_or('a')
            }
        }
        5 => pick(WHITESPACE_POOL, rng),
        6 => {
            if rng.random_bool(0.7) {
                pick(NUMBER_POOL, rng)
            } else {
                from_ranges(class_ranges(ScalarClass::Number), rng).unwrap_or('0')
            }
        }
        _ => pick(BOUNDARY_ALPHABET, rng),
    }
}
