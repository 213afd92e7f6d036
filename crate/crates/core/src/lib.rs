pub mod bench;
pub mod bpe;
pub mod cli;
pub mod differential;
pub mod oracle;
pub mod split;
pub mod unicode;

pub use split::{
    decide_branch, peek_categorize, pretokenize, pretokenize_bytes, pretokenize_strings, Branch,
    Category, DecisionTable, Peek2, Segment, Segments, SplitError, Splitter,
};
