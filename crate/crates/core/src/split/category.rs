use crate::unicode::{class_of, ScalarClass};

/// Peek class of a scalar, in the precedence order used by the decision
/// table. [`Category::Eos`] only appears as the second peek at end of input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Category {
    /// Anything not matched below: punctuation, symbols, marks, unassigned.
    Other = 0,
    /// U+0020.
    Space = 1,
    /// U+0027.
    Quote = 2,
    /// U+000D or U+000A.
    LineFeed = 3,
    Letter = 4,
    /// `White_Space` other than the three above.
    Whitespace = 5,
    Number = 6,
    /// End of input (second peek only).
    Eos = 7,
}

impl Category {
    /// The seven scalar categories, in index order.
    pub const SCALAR: [Category; 7] = [
        Category::Other,
        Category::Space,
        Category::Quote,
        Category::LineFeed,
        Category::Letter,
        Category::Whitespace,
        Category::Number,
    ];

    /// The eight second-peek columns (scalar categories plus end of input).
    pub const COLUMNS: [Category; 8] = [
        Category::Other,
        Category::Space,
        Category::Quote,
        Category::LineFeed,
        Category::Letter,
        Category::Whitespace,
        Category::Number,
        Category::Eos,
    ];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(i: usize) -> Option<Category> {
        if i < Self::COLUMNS.len() {
            Some(Self::COLUMNS[i])
        } else {
            None
        }
    }
}

/// Classifies one scalar.
#[inline]
pub fn peek_categorize(c: char) -> Category {
    match c {
        ' ' => Category::Space,
        '\'' => Category::Quote,
        '\r' | '\n' => Category::LineFeed,
        _ => match class_of(c) {
            ScalarClass::Letter => Category::Letter,
            ScalarClass::WhiteSpace => Category::Whitespace,
            ScalarClass::Number => Category::Number,
            ScalarClass::Other => Category::Other,
        },
    }
}
