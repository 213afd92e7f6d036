//! Minimal byte-level BPE: model files, encoding on top of any [`Splitter`],
//! and a trainer.
//!
//! [`Splitter`]: crate::split::Splitter

mod byte_level;
mod encode;
mod model;
mod train;

pub use byte_level::{bytes_to_visible, visible_to_bytes};
pub use encode::Encoding;
pub use model::{BpeModel, TokenId};
pub use train::{train_bpe, train_bpe_with};

use crate::split::SplitError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BpeError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("document {index} is not valid UTF-8 (first bad byte at offset {valid_up_to})")]
    InvalidUtf8 { index: usize, valid_up_to: usize },
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("i/o error: {0}")]
    Io(String),
}
