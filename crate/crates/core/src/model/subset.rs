//! Lexicographic ranking of k-subsets of `[0, n)`.
//!
//! The rank of a sorted subset `s_1 < ... < s_k` is its position in the
//! lexicographic listing of all `C(n, k)` subsets. It is computed through the
//! combinatorial number system applied to the reflected elements `n-1-s_i`:
//!
//! ```text
//! rank = C(n,k) - 1 - sum_i C(n-1-s_i, k-i+1)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

fn check_subset(subset: &[u32], n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::InvalidSubset(format!("k={k} exceeds n={n}")));
    }
    if subset.len() != k {
        return Err(Error::InvalidSubset(format!(
            "expected {k} elements, got {}",
            subset.len()
        )));
    }
    for w in subset.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidSubset(format!("{subset:?} is not strictly increasing")));
        }
    }
    if let Some(&last) = subset.last() {
        if last as usize >= n {
            return Err(Error::InvalidSubset(format!("element {last} >= n={n}")));
        }
    }
    Ok(())
}

/// Lexicographic rank of a sorted k-subset of `[0, n)`.
pub fn rank_k_subset(subset: &[u32], n: usize, k: usize) -> Result<u64> {
    check_subset(subset, n, k)?;
    let total = binomial(n as u64, k as u64);
    let mut acc = 0u64;
    for (i, &s) in subset.iter().enumerate() {
        acc += binomial((n - 1 - s as usize) as u64, (k - i) as u64);
    }
    Ok(total - 1 - acc)
}

/// Inverse of [`rank_k_subset`].
pub fn unrank_k_subset(rank: u64, n: usize, k: usize) -> Result<Vec<u32>> {
    if k > n {
        return Err(Error::InvalidSubset(format!("k={k} exceeds n={n}")));
    }
    let total = binomial(n as u64, k as u64);
    if rank >= total {
        return Err(Error::InvalidSubset(format!("rank {rank} >= C({n},{k})={total}")));
    }
    let mut rem = total - 1 - rank;
    let mut out = Vec::with_capacity(k);
    let mut upper = n as u64; // exclusive bound on the next reflected value
    for j in (1..=k as u64).rev() {
        // largest t < upper with C(t, j) <= rem
        let mut t = upper - 1;
        while binomial(t, j) > rem {
            t -= 1;
        }
        rem -= binomial(t, j);
        out.push((n as u64 - 1 - t) as u32);
        upper = t;
    }
    Ok(out)
}

/// A k-subset identified by its lexicographic rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KSubsetIndex {
    pub n: usize,
    pub k: usize,
    pub rank: u64,
}

impl KSubsetIndex {
    pub fn of(subset: &[u32], n: usize) -> Result<Self> {
        let k = subset.len();
        Ok(Self { n, k, rank: rank_k_subset(subset, n, k)? })
    }

    pub fn subset(&self) -> Vec<u32> {
        unrank_k_subset(self.rank, self.n, self.k).expect("rank validated at construction")
    }
}

/// Table-driven ranker for hot loops (the engine ledger).
///
/// Holds `C(m, j)` for `m <= n`, `j <= k`; ranking an already-validated
/// sorted subset is `O(k)` lookups.
#[derive(Debug, Clone)]
pub struct SubsetRanker {
    n: usize,
    k: usize,
    table: Vec<u64>,
    total: u64,
}

impl SubsetRanker {
    pub fn new(n: usize, k: usize) -> Self {
        let mut table = vec![0u64; (n + 1) * (k + 1)];
        for m in 0..=n {
            for j in 0..=k {
                table[m * (k + 1) + j] = binomial(m as u64, j as u64);
            }
        }
        Self { n, k, table, total: binomial(n as u64, k as u64) }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Rank of a sorted, in-range subset of length `k`. Not validated.
    #[inline]
    pub fn rank_sorted(&self, subset: &[u32]) -> u64 {
        debug_assert_eq!(subset.len(), self.k);
        let mut acc = 0u64;
        for (i, &s) in subset.iter().enumerate() {
            acc += self.table[(self.n - 1 - s as usize) * (self.k + 1) + (self.k - i)];
        }
        self.total - 1 - acc
    }
}

/// Advance `idx` to the next k-combination of `[0, n)` in lexicographic order.
/// Returns `false` once the last combination has been passed.
pub fn next_combination(idx: &mut [u32], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if (idx[i] as usize) < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Visit every k-subset of `items` (in lexicographic order of positions).
pub fn for_each_k_subset(items: &[u32], k: usize, mut f: impl FnMut(&[u32])) {
    if k > items.len() {
        return;
    }
    let mut idx: Vec<u32> = (0..k as u32).collect();
    let mut buf = vec![0u32; k];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i as usize];
        }
        f(&buf);
        if !next_combination(&mut idx, items.len()) {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_and_last_pairs_of_four() {
        assert_eq!(rank_k_subset(&[0, 1], 4, 2).unwrap(), 0);
        // lexicographic enumeration: 01 02 03 12 13 23
        let mut all = Vec::new();
        for a in 0..4u32 {
            for b in a + 1..4 {
                all.push(vec![a, b]);
            }
        }
        assert_eq!(all.iter().position(|s| s == &vec![2, 3]), Some(5));
        assert_eq!(rank_k_subset(&[2, 3], 4, 2).unwrap(), 5);
    }

    #[test]
    fn roundtrip_example() {
        let r = rank_k_subset(&[1, 2, 4], 6, 3).unwrap();
        assert_eq!(unrank_k_subset(r, 6, 3).unwrap(), vec![1, 2, 4]);
    }

    #[test]
    fn exhaustive_bijection_small() {
        for n in 0..=12usize {
            for k in 0..=4usize.min(n) {
                let total = binomial(n as u64, k as u64);
                let ranker = SubsetRanker::new(n, k);
                let mut idx: Vec<u32> = (0..k as u32).collect();
                let mut expected = 0u64;
                loop {
                    let r = rank_k_subset(&idx, n, k).unwrap();
                    assert_eq!(r, expected, "n={n} k={k} {idx:?}");
                    if k > 0 {
                        assert_eq!(ranker.rank_sorted(&idx), r);
                    }
                    assert_eq!(unrank_k_subset(r, n, k).unwrap(), idx);
                    expected += 1;
                    if k == 0 || !next_combination(&mut idx, n) {
                        break;
                    }
                }
                assert_eq!(expected, total);
            }
        }
    }

    #[test]
    fn malformed_subsets_rejected() {
        assert!(matches!(rank_k_subset(&[1, 1], 4, 2), Err(Error::InvalidSubset(_))));
        assert!(matches!(rank_k_subset(&[2, 1], 4, 2), Err(Error::InvalidSubset(_))));
        assert!(matches!(rank_k_subset(&[0, 4], 4, 2), Err(Error::InvalidSubset(_))));
        assert!(matches!(rank_k_subset(&[0], 4, 2), Err(Error::InvalidSubset(_))));
        assert!(matches!(rank_k_subset(&[0, 1, 2], 2, 3), Err(Error::InvalidSubset(_))));
        assert!(unrank_k_subset(6, 4, 2).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(30, 3), 4060);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(7, 0), 1);
    }
}
