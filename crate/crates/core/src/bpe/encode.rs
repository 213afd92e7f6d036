use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::model::{BpeModel, TokenId};
use super::BpeError;
use crate::split::{Peek2, Splitter};

/// Token ids with the byte range each one covers in the input.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Encoding {
    pub ids: Vec<TokenId>,
    pub offsets: Vec<(usize, usize)>,
}

impl Encoding {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Segments up to this many bytes use the quadratic scan, longer ones the heap.
const SCAN_LIMIT: usize = 48;

impl BpeModel {
    /// Encodes `text` with the table-driven splitter.
    pub fn encode(&self, text: &str) -> Encoding {
        let mut out = Encoding::default();
        for seg in Peek2::new().segments(text) {
            self.encode_segment(&text.as_bytes()[seg.range()], seg.start, &mut out);
        }
        out
    }

    /// Encodes `text` with any splitter.
    pub fn encode_with(&self, splitter: &dyn Splitter, text: &str) -> Result<Encoding, BpeError> {
        let mut out = Encoding::default();
        for seg in splitter.split(text)? {
            self.encode_segment(&text.as_bytes()[seg.range()], seg.start, &mut out);
        }
        Ok(out)
    }

    /// Ids only, without offsets.
    pub fn encode_ids(&self, text: &str) -> Vec<TokenId> {
        let mut ids = Vec::new();
        for seg in Peek2::new().segments(text) {
            self.push_segment_ids(&text.as_bytes()[seg.range()], &mut ids);
        }
        ids
    }

    pub fn encode_ids_with(
        &self,
        splitter: &dyn Splitter,
        text: &str,
    ) -> Result<Vec<TokenId>, BpeError> {
        let mut ids = Vec::new();
        for seg in splitter.split(text)? {
            self.push_segment_ids(&text.as_bytes()[seg.range()], &mut ids);
        }
        Ok(ids)
    }

    pub fn encode_bytes(&self, bytes: &[u8]) -> Result<Encoding, BpeError> {
        let text = std::str::from_utf8(bytes).map_err(|e| BpeError::InvalidUtf8 {
            index: 0,
            valid_up_to: e.valid_up_to(),
        })?;
        Ok(self.encode(text))
    }

    /// Encodes documents in parallel; output order matches input order.
    pub fn encode_batch<D: AsRef<[u8]> + Sync>(
        &self,
        docs: &[D],
    ) -> Result<Vec<Encoding>, BpeError> {
        self.encode_batch_with(&Peek2::new(), docs)
    }

    pub fn encode_batch_with<D: AsRef<[u8]> + Sync>(
        &self,
        splitter: &dyn Splitter,
        docs: &[D],
    ) -> Result<Vec<Encoding>, BpeError> {
        docs.par_iter()
            .enumerate()
            .map(|(index, doc)| {
                let text =
                    std::str::from_utf8(doc.as_ref()).map_err(|e| BpeError::InvalidUtf8 {
                        index,
                        valid_up_to: e.valid_up_to(),
                    })?;
                self.encode_with(splitter, text)
            })
            .collect()
    }

    /// Applies merges to one pretoken, appending ids and absolute offsets.
    pub fn encode_segment(&self, bytes: &[u8], base: usize, out: &mut Encoding) {
        if let [b] = bytes {
            out.ids.push(self.byte_id(*b));
            out.offsets.push((base, base + 1));
            return;
        }
        let parts = self.merge_parts(bytes);
        for (i, &(id, start)) in parts.iter().enumerate() {
            let end = parts.get(i + 1).map_or(bytes.len(), |p| p.1);
            out.ids.push(id);
            out.offsets.push((base + start, base + end));
        }
    }

    fn push_segment_ids(&self, bytes: &[u8], ids: &mut Vec<TokenId>) {
        match bytes {
            [b] => ids.push(self.byte_id(*b)),
            _ => ids.extend(self.merge_parts(bytes).into_iter().map(|p| p.0)),
        }
    }

    /// Final tokens of one pretoken with their start offsets.
    fn merge_parts(&self, bytes: &[u8]) -> Vec<(TokenId, usize)> {
        if bytes.len() <= SCAN_LIMIT {
            self.merge_scan(bytes)
        } else {
            self.merge_heap(bytes)
        }
    }

    /// Repeatedly merges the lowest-ranked adjacent pair, leftmost first.
    fn merge_scan(&self, bytes: &[u8]) -> Vec<(TokenId, usize)> {
        let mut parts: Vec<(TokenId, usize)> = bytes
            .iter()
            .enumerate()
            .map(|(i, &b)| (self.byte_id(b), i))
            .collect();
        loop {
            let mut best: Option<(u32, usize, TokenId)> = None;
            for i in 0..parts.len().saturating_sub(1) {
                if let Some((rank, merged)) = self.merge_rank(parts[i].0, parts[i + 1].0) {
                    if best.is_none_or(|(r, _, _)| rank < r) {
                        best = Some((rank, i, merged));
                    }
                }
            }
            let Some((_, i, merged)) = best else { break };
            parts[i].0 = merged;
            parts.remove(i + 1);
        }
        parts
    }

    /// Same result as [`Self::merge_scan`] in `O(k log k)`.
    fn merge_heap(&self, bytes: &[u8]) -> Vec<(TokenId, usize)> {
        let n = bytes.len();
        let mut ids: Vec<TokenId> = bytes.iter().map(|&b| self.byte_id(b)).collect();
        let mut next: Vec<usize> = (1..=n).collect();
        let mut prev: Vec<usize> = (0..n).map(|i| i.wrapping_sub(1)).collect();
        let mut alive = vec![true; n];
        // (rank, left node, right node, left id, right id)
        let mut heap = BinaryHeap::new();
        let push = |heap: &mut BinaryHeap<_>, ids: &[TokenId], l: usize, r: usize| {
            if let Some((rank, _)) = self.merge_rank(ids[l], ids[r]) {
                heap.push(Reverse((rank, l, r, ids[l], ids[r])));
            }
        };
        for i in 0..n - 1 {
            push(&mut heap, &ids, i, i + 1);
        }
        while let Some(Reverse((_, l, r, lid, rid))) = heap.pop() {
            if !alive[l] || !alive[r] || next[l] != r || ids[l] != lid || ids[r] != rid {
                continue;
            }
            let (_, merged) = self.merge_rank(lid, rid).expect("pushed pairs merge");
            ids[l] = merged;
            alive[r] = false;
            next[l] = next[r];
            if next[l] < n {
                prev[next[l]] = l;
                push(&mut heap, &ids, l, next[l]);
            }
            if prev[l] < n {
                push(&mut heap, &ids, prev[l], l);
            }
        }
        (0..n).filter(|&i| alive[i]).map(|i| (ids[i], i)).collect()
    }
}
