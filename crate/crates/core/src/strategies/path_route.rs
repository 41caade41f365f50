//! Permutation routing along a loose path.
//!
//! Consecutive vertices of a loose path always share an edge, so the path's
//! ordering embeds an ordinary path in the underlying graph. Routing splits
//! it in two halves, moves every agent into the half containing its
//! destination with an odd-even transposition sort on 0/1 keys, and recurses
//! on both halves in parallel: `f(l) <= l + f(ceil(l/2))`.

use crate::error::{Error, Result};
use crate::model::{LoosePath, Matching, Vertex};

use super::{merge_lanes, Rounds};

/// Odd-even transposition sort of `items` by `key`; returns the non-empty
/// rounds of adjacent swaps, at most `items.len()` of them.
pub(crate) fn odd_even_sort<T, K: Ord>(items: &mut [T], key: impl Fn(&T) -> K) -> Rounds {
    let mut rounds = Vec::new();
    let mut parity = 0;
    while items.windows(2).any(|w| key(&w[0]) > key(&w[1])) {
        let mut swaps = Vec::new();
        let mut i = parity;
        while i + 1 < items.len() {
            if key(&items[i]) > key(&items[i + 1]) {
                items.swap(i, i + 1);
                swaps.push((i, i + 1));
            }
            i += 2;
        }
        parity ^= 1;
        if !swaps.is_empty() {
            rounds.push(swaps);
        }
    }
    rounds
}

fn shift(rounds: Rounds, by: usize) -> Rounds {
    rounds.into_iter().map(|r| r.into_iter().map(|(a, b)| (a + by, b + by)).collect()).collect()
}

/// Routes so that the entry at local index `i` ends at index `dest[i]`
/// (relative to `base`); `dest` is permuted along with the swaps.
pub(crate) fn halving(dest: &mut [usize], base: usize) -> Rounds {
    let len = dest.len();
    if len <= 1 {
        return Vec::new();
    }
    let mid = len.div_ceil(2);
    let mut rounds = odd_even_sort(dest, |&d| d >= base + mid);
    let (left, right) = dest.split_at_mut(mid);
    let l = halving(left, base);
    let r = shift(halving(right, base + mid), mid);
    rounds.extend(merge_lanes(vec![l, r]));
    rounds
}

/// `target[i]` is the vertex where the agent now on `ordering[i]` must end.
pub fn route_on_loose_path(path: &LoosePath, target: &[Vertex]) -> Result<Vec<Matching>> {
    let ord = path.ordering();
    if target.len() != ord.len() {
        return Err(Error::InvalidTarget(format!("{} targets for {} path vertices", target.len(), ord.len())));
    }
    let max = ord.iter().copied().max().unwrap_or(0) as usize;
    let mut index = vec![usize::MAX; max + 1];
    for (i, &v) in ord.iter().enumerate() {
        index[v as usize] = i;
    }
    let mut seen = vec![false; ord.len()];
    let mut dest = Vec::with_capacity(ord.len());
    for &v in target {
        let i = index.get(v as usize).copied().unwrap_or(usize::MAX);
        if i == usize::MAX {
            return Err(Error::InvalidTarget(format!("vertex {v} is not on the path")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidTarget(format!("vertex {v} targeted twice")));
        }
        dest.push(i);
    }
    let rounds = halving(&mut dest, 0);
    Ok(rounds
        .into_iter()
        .map(|r| Matching::from_disjoint(r.into_iter().map(|(a, b)| (ord[a], ord[b])).collect()))
        .collect())
}
