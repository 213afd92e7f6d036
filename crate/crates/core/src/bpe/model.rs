use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};

use super::byte_level::{bytes_to_visible, visible_to_bytes};
use super::BpeError;

/// Token ids are positions in the vocabulary.
pub type TokenId = u32;

/// Vocabulary (token bytes <-> dense ids) plus ranked merge rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpeModel {
    tokens: Vec<Vec<u8>>,
    ids: HashMap<Vec<u8>, TokenId>,
    merges: Vec<(TokenId, TokenId)>,
    merge_lookup: HashMap<(TokenId, TokenId), (u32, TokenId)>,
    byte_ids: [TokenId; 256],
}

impl BpeModel {
    /// Builds and validates a model. `tokens[i]` is the byte string of id `i`;
    /// merges are in rank order.
    pub fn new(tokens: Vec<Vec<u8>>, merges: Vec<(Vec<u8>, Vec<u8>)>) -> Result<Self, BpeError> {
        let mut ids = HashMap::with_capacity(tokens.len());
        for (id, token) in tokens.iter().enumerate() {
            if token.is_empty() {
                return Err(BpeError::InvalidModel(format!("token {id} is empty")));
            }
            if ids.insert(token.clone(), id as TokenId).is_some() {
                return Err(BpeError::InvalidModel(format!(
                    "token {:?} appears twice",
                    bytes_to_visible(token)
                )));
            }
        }
        let mut byte_ids = [0; 256];
        for b in 0..=255u8 {
            byte_ids[b as usize] = *ids.get(&vec![b]).ok_or_else(|| {
                BpeError::InvalidModel(format!("missing single-byte token {b:#04x}"))
            })?;
        }

        let lookup = |bytes: &[u8], what: &str, rank: usize| {
            ids.get(bytes).copied().ok_or_else(|| {
                BpeError::InvalidModel(format!(
                    "merge {rank}: {what} {:?} is not in the vocabulary",
                    bytes_to_visible(bytes)
                ))
            })
        };
        let mut merge_ids = Vec::with_capacity(merges.len());
        let mut merge_lookup = HashMap::with_capacity(merges.len());
        for (rank, (left, right)) in merges.iter().enumerate() {
            let l = lookup(left, "left operand", rank)?;
            let r = lookup(right, "right operand", rank)?;
            let joined = [left.as_slice(), right.as_slice()].concat();
            let merged = lookup(&joined, "merged token", rank)?;
            // A repeated pair can never fire at its later rank.
            merge_lookup.entry((l, r)).or_insert((rank as u32, merged));
            merge_ids.push((l, r));
        }

        Ok(BpeModel {
            tokens,
            ids,
            merges: merge_ids,
            merge_lookup,
            byte_ids,
        })
    }

    /// The 256 single bytes (id = byte value) and no merges.
    pub fn bytes_only() -> Self {
        BpeModel::new((0..=255u8).map(|b| vec![b]).collect(), Vec::new())
            .expect("byte alphabet is a valid model")
    }

    pub fn vocab_size(&self) -> usize {
        self.tokens.len()
    }

    pub fn token_bytes(&self, id: TokenId) -> Option<&[u8]> {
        self.tokens.get(id as usize).map(Vec::as_slice)
    }

    pub fn token_id(&self, bytes: &[u8]) -> Option<TokenId> {
        self.ids.get(bytes).copied()
    }

    pub fn byte_id(&self, byte: u8) -> TokenId {
        self.byte_ids[byte as usize]
    }

    /// Merges as `(left, right)` id pairs, rank order.
    pub fn merges(&self) -> &[(TokenId, TokenId)] {
        &self.merges
    }

    /// Rank and result of merging `left` then `right`, if that pair merges.
    #[inline]
    pub fn merge_rank(&self, left: TokenId, right: TokenId) -> Option<(u32, TokenId)> {
        self.merge_lookup.get(&(left, right)).copied()
    }

    /// Concatenated bytes of `ids`. Unknown ids are skipped.
    pub fn decode(&self, ids: &[TokenId]) -> Vec<u8> {
        ids.iter()
            .filter_map(|&id| self.token_bytes(id))
            .flatten()
            .copied()
            .collect()
    }

    /// Vocabulary as a JSON object of visible token to id, in id order.
    pub fn to_vocab_json(&self) -> String {
        let mut out = String::from("{\n");
        for (id, token) in self.tokens.iter().enumerate() {
            let key = serde_json::to_string(&bytes_to_visible(token)).expect("strings serialize");
            out.push_str(&format!("  {key}: {id}"));
            out.push_str(if id + 1 == self.tokens.len() {
                "\n"
            } else {
                ",\n"
            });
        }
        out.push('}');
        out.push('\n');
        out
    }

    /// Merges as `left right` lines of visible tokens, rank order.
    pub fn to_merges_text(&self) -> String {
        let mut out = String::from("#version: 0.2\n");
        for &(l, r) in &self.merges {
            out.push_str(&bytes_to_visible(&self.tokens[l as usize]));
            out.push(' ');
            out.push_str(&bytes_to_visible(&self.tokens[r as usize]));
            out.push('\n');
        }
        out
    }

    /// Parses the on-disk formats produced by [`Self::to_vocab_json`] and
    /// [`Self::to_merges_text`] (the usual byte-level `vocab.json` /
    /// `merges.txt` pair).
    pub fn load(vocab_json: &str, merges_text: &str) -> Result<Self, BpeError> {
        let entries: VocabEntries =
            serde_json::from_str(vocab_json).map_err(|e| BpeError::Parse(format!("vocab: {e}")))?;

        let mut slots: Vec<Option<Vec<u8>>> = vec![None; entries.0.len()];
        for (token, id) in entries.0 {
            let bytes = visible_to_bytes(&token).ok_or_else(|| {
                BpeError::Parse(format!("vocab: token {token:?} is not byte-level encoded"))
            })?;
            let slot = slots.get_mut(id as usize).ok_or_else(|| {
                BpeError::InvalidModel(format!("id {id} of {token:?} leaves a gap in the ids"))
            })?;
            if slot.is_some() {
                return Err(BpeError::InvalidModel(format!("id {id} is used twice")));
            }
            *slot = Some(bytes);
        }
        let tokens: Vec<Vec<u8>> = slots.into_iter().map(|s| s.expect("dense ids")).collect();

        let mut merges = Vec::new();
        for (lineno, line) in merges_text.lines().enumerate() {
            if line.starts_with("#version") || line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(' ');
            let (Some(l), Some(r), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(BpeError::Parse(format!(
                    "merges line {}: expected `left right`",
                    lineno + 1
                )));
            };
            let decode = |t: &str| {
                visible_to_bytes(t).ok_or_else(|| {
                    BpeError::Parse(format!(
                        "merges line {}: {t:?} is not byte-level encoded",
                        lineno + 1
                    ))
                })
            };
            merges.push((decode(l)?, decode(r)?));
        }
        BpeModel::new(tokens, merges)
    }

    pub fn load_files(vocab: impl AsRef<Path>, merges: impl AsRef<Path>) -> Result<Self, BpeError> {
        let read = |p: &Path| {
            std::fs::read_to_string(p).map_err(|e| BpeError::Io(format!("{}: {e}", p.display())))
        };
        BpeModel::load(&read(vocab.as_ref())?, &read(merges.as_ref())?)
    }

    pub fn save_files(
        &self,
        vocab: impl AsRef<Path>,
        merges: impl AsRef<Path>,
    ) -> Result<(), BpeError> {
        let write = |p: &Path, s: String| {
            std::fs::write(p, s).map_err(|e| BpeError::Io(format!("{}: {e}", p.display())))
        };
        write(vocab.as_ref(), self.to_vocab_json())?;
        write(merges.as_ref(), self.to_merges_text())
    }
}

/// JSON object entries in document order, duplicates kept.
struct VocabEntries(Vec<(String, u32)>);

impl<'de> Deserialize<'de> for VocabEntries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = VocabEntries;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map of token to id")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<VocabEntries, A::Error> {
                let mut out = Vec::with_capacity(map.size_hint().unwrap_or(0));
                while let Some(entry) = map.next_entry::<String, u32>()? {
                    out.push(entry);
                }
                Ok(VocabEntries(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> BpeModel {
        let mut tokens: Vec<Vec<u8>> = (0..=255u8).map(|b| vec![b]).collect();
        tokens.push(b"ab".to_vec());
        tokens.push(b"abc".to_vec());
        BpeModel::new(
            tokens,
            vec![
                (b"a".to_vec(), b"b".to_vec()),
                (b"ab".to_vec(), b"c".to_vec()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn bytes_only_model() {
        let m = BpeModel::bytes_only();
        assert_eq!(m.vocab_size(), 256);
        assert_eq!(m.byte_id(b'a'), 97);
        assert!(m.merges().is_empty());
    }

    #[test]
    fn save_load_round_trip() {
        let m = tiny();
        let loaded = BpeModel::load(&m.to_vocab_json(), &m.to_merges_text()).unwrap();
        assert_eq!(loaded, m);
        assert_eq!(loaded.merge_rank(97, 98), Some((0, 256)));
        assert_eq!(loaded.merge_rank(256, 99), Some((1, 257)));
    }

    #[test]
    fn unknown_merge_operand_is_invalid() {
        let m = BpeModel::bytes_only();
        let err = BpeModel::load(&m.to_vocab_json(), "#version: 0.2\nab c\n").unwrap_err();
        assert!(matches!(err, BpeError::InvalidModel(_)), "{err}");
    }

    #[test]
    fn merged_token_must_exist() {
        let tokens: Vec<Vec<u8>> = (0..=255u8).map(|b| vec![b]).collect();
        let err = BpeModel::new(tokens, vec![(b"a".to_vec(), b"b".to_vec())]).unwrap_err();
        assert!(matches!(err, BpeError::InvalidModel(_)));
    }

    #[test]
    fn duplicate_and_sparse_ids_are_invalid() {
        let m = BpeModel::bytes_only();
        let dup = m.to_vocab_json().replace("\"b\": 98", "\"b\": 97");
        assert!(matches!(
            BpeModel::load(&dup, ""),
            Err(BpeError::InvalidModel(_))
        ));
        let gap = m.to_vocab_json().replace("\"b\": 98", "\"b\": 980");
        assert!(matches!(
            BpeModel::load(&gap, ""),
            Err(BpeError::InvalidModel(_))
        ));
    }

    #[test]
    fn missing_byte_is_invalid() {
        let tokens: Vec<Vec<u8>> = (0..=254u8).map(|b| vec![b]).collect();
        assert!(matches!(
            BpeModel::new(tokens, vec![]),
            Err(BpeError::InvalidModel(_))
        ));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            BpeModel::load("not json", ""),
            Err(BpeError::Parse(_))
        ));
        let m = BpeModel::bytes_only();
        assert!(matches!(
            BpeModel::load(&m.to_vocab_json(), "a b c\n"),
            Err(BpeError::Parse(_))
        ));
        assert!(matches!(
            BpeModel::load("{\" x\": 0}", ""),
            Err(BpeError::Parse(_))
        ));
    }
}
