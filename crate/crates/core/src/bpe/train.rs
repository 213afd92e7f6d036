use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};

use rayon::prelude::*;

use super::model::{BpeModel, TokenId};
use super::BpeError;
use crate::split::{Peek2, Splitter};

type Pair = (TokenId, TokenId);

/// Learns a byte-level BPE model from `corpus`, splitting with the
/// table-driven splitter. Ids `0..256` are the single bytes.
pub fn train_bpe<D: AsRef<str> + Sync>(
    corpus: &[D],
    vocab_size: usize,
    min_frequency: u64,
) -> Result<BpeModel, BpeError> {
    train_bpe_with(&Peek2::new(), corpus, vocab_size, min_frequency)
}

/// [`train_bpe`] with any splitter.
///
/// Merges are chosen by pair frequency; ties go to the pair whose left token
/// bytes are lexicographically smaller, then the right's. The result does not
/// depend on the number of threads.
pub fn train_bpe_with<D: AsRef<str> + Sync>(
    splitter: &dyn Splitter,
    corpus: &[D],
    vocab_size: usize,
    min_frequency: u64,
) -> Result<BpeModel, BpeError> {
    if vocab_size < 256 {
        return Err(BpeError::InvalidConfig(format!(
            "vocab size {vocab_size} is below the 256 byte tokens"
        )));
    }
    let min_frequency = min_frequency.max(1);

    let counts = count_segments(splitter, corpus)?;
    let mut words: Vec<(Vec<TokenId>, u64)> = counts
        .into_iter()
        .map(|(bytes, n)| (bytes.iter().map(|&b| b as TokenId).collect(), n))
        .collect();
    words.sort_unstable();

    let mut tokens: Vec<Vec<u8>> = (0..=255u8).map(|b| vec![b]).collect();
    let mut ids: HashMap<Vec<u8>, TokenId> = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i as TokenId))
        .collect();
    let mut merges: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();

    let mut pair_counts: HashMap<Pair, u64> = HashMap::new();
    let mut where_: HashMap<Pair, HashSet<usize>> = HashMap::new();
    for (wi, (word, n)) in words.iter().enumerate() {
        for p in word.windows(2) {
            let pair = (p[0], p[1]);
            *pair_counts.entry(pair).or_default() += n;
            where_.entry(pair).or_default().insert(wi);
        }
    }
    let mut heap: BinaryHeap<Candidate> = pair_counts
        .iter()
        .map(|(&pair, &count)| Candidate::new(pair, count, &tokens))
        .collect();

    while tokens.len() < vocab_size {
        let Some(top) = heap.pop() else { break };
        let current = pair_counts.get(&top.pair).copied().unwrap_or(0);
        if current != top.count {
            if current > 0 {
                heap.push(Candidate {
                    count: current,
                    ..top
                });
            }
            continue;
        }
        if current < min_frequency {
            break;
        }

        let (l, r) = top.pair;
        let joined = [tokens[l as usize].as_slice(), &tokens[r as usize]].concat();
        let new_id = match ids.get(&joined) {
            Some(&id) => id,
            None => {
                let id = tokens.len() as TokenId;
                ids.insert(joined.clone(), id);
                tokens.push(joined);
                id
            }
        };
        merges.push((top.left, top.right));

        let mut affected: Vec<usize> = where_
            .remove(&top.pair)
            .unwrap_or_default()
            .into_iter()
            .collect();
        affected.sort_unstable();
        let mut changed: HashSet<Pair> = HashSet::new();
        for wi in affected {
            let (word, n) = &mut words[wi];
            let Some(merged) = merge_word(word, top.pair, new_id) else {
                continue;
            };
            for p in word.windows(2) {
                let pair = (p[0], p[1]);
                let c = pair_counts.get_mut(&pair).expect("counted pair");
                *c -= *n;
                changed.insert(pair);
            }
            for p in merged.windows(2) {
                let pair = (p[0], p[1]);
                *pair_counts.entry(pair).or_default() += *n;
                where_.entry(pair).or_default().insert(wi);
                changed.insert(pair);
            }
            *word = merged;
        }
        pair_counts.retain(|_, c| *c > 0);
        let mut changed: Vec<Pair> = changed.into_iter().collect();
        changed.sort_unstable();
        for pair in changed {
            if let Some(&count) = pair_counts.get(&pair) {
                heap.push(Candidate::new(pair, count, &tokens));
            }
        }
    }

    BpeModel::new(tokens, merges)
}

/// Occurrence count of every distinct segment.
fn count_segments<'a, D: AsRef<str> + Sync>(
    splitter: &dyn Splitter,
    corpus: &'a [D],
) -> Result<HashMap<&'a [u8], u64>, BpeError> {
    corpus
        .par_iter()
        .try_fold(HashMap::new, |mut acc: HashMap<&'a [u8], u64>, doc| {
            let text = doc.as_ref();
            for seg in splitter.split(text)? {
                *acc.entry(&text.as_bytes()[seg.range()]).or_default() += 1;
            }
            Ok::<_, BpeError>(acc)
        })
        .try_reduce(HashMap::new, |mut a, b| {
            let (mut big, small) = if a.len() >= b.len() {
                (a, b)
            } else {
                (b, std::mem::take(&mut a))
            };
            for (k, v) in small {
                *big.entry(k).or_default() += v;
            }
            Ok(big)
        })
}

/// `word` with non-overlapping occurrences of `pair` replaced, left to right;
/// `None` if it has none.
fn merge_word(word: &[TokenId], pair: Pair, new_id: TokenId) -> Option<Vec<TokenId>> {
    let mut out = Vec::with_capacity(word.len());
    let mut hit = false;
    let mut i = 0;
    while i < word.len() {
        if i + 1 < word.len() && (word[i], word[i + 1]) == pair {
            out.push(new_id);
            hit = true;
            i += 2;
        } else {
            out.push(word[i]);
            i += 1;
        }
    }
    hit.then_some(out)
}

#[derive(Debug, PartialEq, Eq)]
struct Candidate {
    count: u64,
    left: Vec<u8>,
    right: Vec<u8>,
    pair: Pair,
}

impl Candidate {
    fn new(pair: Pair, count: u64, tokens: &[Vec<u8>]) -> Self {
        Candidate {
            count,
            left: tokens[pair.0 as usize].clone(),
            right: tokens[pair.1 as usize].clone(),
            pair,
        }
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.count
            .cmp(&other.count)
            .then_with(|| other.left.cmp(&self.left))
            .then_with(|| other.right.cmp(&self.right))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
