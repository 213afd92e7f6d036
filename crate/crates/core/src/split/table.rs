use std::fmt;

use super::category::Category;

/// The five segmentation routines, one per group of pattern alternatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Branch {
    /// `'(?i:[sdmt]|ll|ve|re)`, falling back to [`Branch::Word`].
    Contraction = 0,
    /// `[^\r\n\p{L}\p{N}]?+\p{L}++`
    Word = 1,
    /// `\p{N}{1,3}+`
    Number = 2,
    /// ` ?[^\s\p{L}\p{N}]++[\r\n]*+`
    Punctuation = 3,
    /// `\s++$|\s*[\r\n]|\s+(?!\S)|\s`
    Whitespace = 4,
}

impl Branch {
    pub const ALL: [Branch; 5] = [
        Branch::Contraction,
        Branch::Word,
        Branch::Number,
        Branch::Punctuation,
        Branch::Whitespace,
    ];

    pub const fn id(self) -> u8 {
        self as u8
    }

    pub const fn from_id(id: u8) -> Option<Branch> {
        match id {
            0 => Some(Branch::Contraction),
            1 => Some(Branch::Word),
            2 => Some(Branch::Number),
            3 => Some(Branch::Punctuation),
            4 => Some(Branch::Whitespace),
            _ => None,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// `(first category, second category or EOS) -> Branch`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionTable {
    cells: [[Branch; 8]; 7],
}

const fn row(ids: [u8; 8]) -> [Branch; 8] {
    let mut out = [Branch::Contraction; 8];
    let mut i = 0;
    while i < 8 {
        out[i] = match Branch::from_id(ids[i]) {
            Some(b) => b,
            None => panic!("branch id out of range"),
        };
        i += 1;
    }
    out
}

impl DecisionTable {
    /// The cl100k table. Columns 0..=6 are the published 7x7 table; the last
    /// column is the end-of-input peek.
    pub const CL100K: DecisionTable = DecisionTable {
        cells: [
            //   0  1  2  3  4  5  6  EOS
            row([3, 3, 3, 3, 1, 3, 3, 3]), // 0 other
            row([3, 4, 3, 4, 1, 4, 4, 4]), // 1 space
            row([3, 3, 3, 3, 0, 3, 3, 3]), // 2 quote
            row([4, 4, 4, 4, 4, 4, 4, 4]), // 3 CR/LF
            row([1, 1, 1, 1, 1, 1, 1, 1]), // 4 letter
            row([4, 4, 4, 4, 1, 4, 4, 4]), // 5 whitespace
            row([2, 2, 2, 2, 2, 2, 2, 2]), // 6 number
        ],
    };

    /// Branch for the peeked pair. `first` must be a scalar category.
    #[inline]
    pub fn decide(&self, first: Category, second: Category) -> Branch {
        debug_assert!(first != Category::Eos, "first peek is never EOS");
        self.cells[first.index()][second.index()]
    }

    /// Copy with one cell replaced.
    pub fn with_cell(mut self, first: Category, second: Category, branch: Branch) -> Self {
        assert!(first != Category::Eos, "first peek is never EOS");
        self.cells[first.index()][second.index()] = branch;
        self
    }

    /// All `(first, second, branch)` cells, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (Category, Category, Branch)> + '_ {
        Category::SCALAR.into_iter().flat_map(move |first| {
            Category::COLUMNS
                .into_iter()
                .map(move |second| (first, second, self.decide(first, second)))
        })
    }
}

impl Default for DecisionTable {
    fn default() -> Self {
        Self::CL100K
    }
}

impl fmt::Display for DecisionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cat0 | 0 1 2 3 4 5 6 EOS")?;
        for first in Category::SCALAR {
            write!(f, "   {} |", first.index())?;
            for second in Category::COLUMNS {
                write!(f, " {}", self.decide(first, second))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Branch for `(cat0, cat1)` under the cl100k table.
#[inline]
pub fn decide_branch(first: Category, second: Category) -> Branch {
    DecisionTable::CL100K.decide(first, second)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PUBLISHED: [[u8; 7]; 7] = [
        [3, 3, 3, 3, 1, 3, 3],
        [3, 4, 3, 4, 1, 4, 4],
        [3, 3, 3, 3, 0, 3, 3],
        [4, 4, 4, 4, 4, 4, 4],
        [1, 1, 1, 1, 1, 1, 1],
        [4, 4, 4, 4, 1, 4, 4],
        [2, 2, 2, 2, 2, 2, 2],
    ];

    #[test]
    fn matches_published_table() {
        for (i, row) in PUBLISHED.iter().enumerate() {
            for (j, &id) in row.iter().enumerate() {
                let got = decide_branch(Category::SCALAR[i], Category::SCALAR[j]);
                assert_eq!(got.id(), id, "cell ({i}, {j})");
            }
        }
    }

    #[test]
    fn eos_column() {
        let col: Vec<u8> = Category::SCALAR
            .iter()
            .map(|&c| decide_branch(c, Category::Eos).id())
            .collect();
        assert_eq!(col, vec![3, 4, 3, 4, 1, 4, 2]);
    }

    #[test]
    fn worked_cells() {
        assert_eq!(
            decide_branch(Category::Quote, Category::Letter),
            Branch::Contraction
        );
        assert_eq!(
            decide_branch(Category::Space, Category::Letter),
            Branch::Word
        );
        assert_eq!(
            decide_branch(Category::Number, Category::Eos),
            Branch::Number
        );
    }

    #[test]
    fn with_cell_changes_only_that_cell() {
        let t = DecisionTable::CL100K.with_cell(Category::Other, Category::Other, Branch::Number);
        let diffs = t
            .cells()
            .zip(DecisionTable::CL100K.cells())
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(diffs, 1);
        assert_eq!(t.decide(Category::Other, Category::Other), Branch::Number);
    }
}
