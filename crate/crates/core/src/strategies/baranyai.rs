//! 1-factorizations of the complete s-uniform hypergraph on `N` vertices.
//!
//! The general case follows the integral-flow induction: after processing
//! elements `0..i`, every factor is a list of `N/s` (possibly empty) subsets
//! of `0..i`, and each subset `A` occurs `C(N-i, s-|A|)` times over all
//! factors. A flow network decides which subset of each factor receives
//! element `i`; the fractional solution sending `(s-|A|)/(N-i)` along every
//! slot shows an integral maximum flow saturates all factors.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(rename = "N")]
    pub n: usize,
    pub s: usize,
    /// Each factor lists `N/s` disjoint sorted s-subsets.
    pub factors: Vec<Vec<Vec<u32>>>,
}

impl Factorization {
    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Checks that every factor partitions `[0, N)` into s-sets, every
    /// s-set appears exactly once, and there are `C(N-1, s-1)` factors.
    pub fn validate(&self) -> Result<()> {
        let (n, s) = (self.n, self.s);
        if s == 0 || n % s != 0 {
            return Err(Error::NotDivisible { n, s });
        }
        let bad = |msg: String| Err(Error::InvalidStructure(msg));
        let expected = binomial(n as u64 - 1, s as u64 - 1);
        if self.factors.len() as u64 != expected {
            return bad(format!("{} factors, expected {expected}", self.factors.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for (f, factor) in self.factors.iter().enumerate() {
            let mut covered = vec![false; n];
            for part in factor {
                if part.len() != s || part.windows(2).any(|w| w[0] >= w[1]) {
                    return bad(format!("factor {f} has malformed part {part:?}"));
                }
                for &v in part {
                    if v as usize >= n || std::mem::replace(&mut covered[v as usize], true) {
                        return bad(format!("factor {f} is not a partition"));
                    }
                }
                if !seen.insert(part.clone()) {
                    return bad(format!("part {part:?} appears twice"));
                }
            }
            if covered.iter().any(|&c| !c) {
                return bad(format!("factor {f} misses a vertex"));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialises")
    }
}

pub fn baranyai(n: usize, s: usize) -> Result<Factorization> {
    if s == 0 || n == 0 || !n.is_multiple_of(s) {
        return Err(Error::NotDivisible { n, s });
    }
    if n > 128 {
        return Err(Error::InvalidStructure(format!("N={n} exceeds the supported 128")));
    }
    let factors = if s == 1 {
        vec![(0..n as u32).map(|v| vec![v]).collect()]
    } else if s == n {
        vec![vec![(0..n as u32).collect()]]
    } else if s == 2 {
        round_robin(n)
    } else {
        flow_factorization(n, s)
    };
    Ok(Factorization { n, s, factors })
}

/// Circle method: vertex `N-1` is fixed, the rest rotate.
fn round_robin(n: usize) -> Vec<Vec<Vec<u32>>> {
    let m = n - 1;
    (0..m)
        .map(|round| {
            let mut factor = vec![sorted(vec![round as u32, m as u32])];
            for i in 1..n / 2 {
                let a = ((round + i) % m) as u32;
                let b = ((round + m - i) % m) as u32;
                factor.push(sorted(vec![a, b]));
            }
            factor
        })
        .collect()
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

fn flow_factorization(n: usize, s: usize) -> Vec<Vec<Vec<u32>>> {
    let slots = n / s;
    let count = binomial(n as u64 - 1, s as u64 - 1) as usize;
    let mut factors: Vec<Vec<u128>> = vec![vec![0u128; slots]; count];
    for i in 0..n {
        // distinct subsets with their sink capacities
        let mut kinds: HashMap<u128, usize> = HashMap::new();
        let mut kind_masks = Vec::new();
        for f in &factors {
            for &a in f {
                let size = a.count_ones() as usize;
                if size < s && !kinds.contains_key(&a) {
                    kinds.insert(a, kind_masks.len());
                    kind_masks.push(a);
                }
            }
        }
        let source = 0;
        let sink = 1;
        let factor_node = |f: usize| 2 + f;
        let kind_node = |k: usize| 2 + count + k;
        let mut net = Dinic::new(2 + count + kind_masks.len());
        let mut arcs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); count];
        for (f, factor) in factors.iter().enumerate() {
            net.add(source, factor_node(f), 1);
            let mut mult: HashMap<usize, usize> = HashMap::new();
            for a in factor {
                if let Some(&k) = kinds.get(a) {
                    *mult.entry(k).or_default() += 1;
                }
            }
            let mut ks: Vec<_> = mult.into_iter().collect();
            ks.sort_unstable();
            for (k, m) in ks {
                let id = net.add(factor_node(f), kind_node(k), m as i64);
                arcs[f].push((k, id));
            }
        }
        for (k, &a) in kind_masks.iter().enumerate() {
            let size = a.count_ones() as u64;
            let cap = binomial((n - i - 1) as u64, s as u64 - size - 1);
            if cap > 0 {
                net.add(kind_node(k), sink, cap as i64);
            }
        }
        let total = net.max_flow(source, sink);
        assert_eq!(total as usize, count, "integral flow saturates every factor");
        for (f, factor) in factors.iter_mut().enumerate() {
            let (k, _) = *arcs[f].iter().find(|&&(_, id)| net.flow(id) > 0).expect("one unit per factor");
            let slot = factor.iter_mut().find(|a| **a == kind_masks[k]).expect("slot exists");
            *slot |= 1u128 << i;
        }
    }
    factors
        .into_iter()
        .map(|f| {
            let mut parts: Vec<Vec<u32>> =
                f.into_iter().map(|m| (0..n as u32).filter(|&v| m >> v & 1 == 1).collect()).collect();
            parts.sort_unstable();
            parts
        })
        .collect()
}

/// Minimal Dinic max-flow.
struct Dinic {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Self { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new(), level: vec![0; n], iter: vec![0; n] }
    }

    /// Returns the id of the forward arc.
    fn add(&mut self, u: usize, v: usize, c: i64) -> usize {
        let id = self.to.len();
        self.head[u].push(id);
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        id
    }

    fn flow(&self, id: usize) -> i64 {
        self.cap[id + 1]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.head[u] {
                let v = self.to[id];
                if self.cap[id] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, f: i64) -> i64 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.head[u].len() {
            let id = self.head[u][self.iter[u]];
            let v = self.to[id];
            if self.cap[id] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, f.min(self.cap[id]));
                if d > 0 {
                    self.cap[id] -= d;
                    self.cap[id ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let f = baranyai(4, 2).unwrap();
        assert_eq!(f.factor_count(), 3);
        f.validate().unwrap();
        let f = baranyai(3, 1).unwrap();
        assert_eq!(f.factors, vec![vec![vec![0], vec![1], vec![2]]]);
        let f = baranyai(6, 3).unwrap();
        assert_eq!(f.factor_count(), 10);
        f.validate().unwrap();
        assert_eq!(baranyai(5, 5).unwrap().factor_count(), 1);
    }

    #[test]
    fn indivisible_rejected() {
        assert!(matches!(baranyai(7, 3), Err(Error::NotDivisible { n: 7, s: 3 })));
        assert!(matches!(baranyai(4, 0), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn flow_case_for_pairs_agrees_in_count() {
        let f = Factorization { n: 8, s: 2, factors: flow_factorization(8, 2) };
        f.validate().unwrap();
    }

    #[test]
    fn json_shape() {
        let f = baranyai(2, 1).unwrap();
        assert_eq!(f.to_json(), r#"{"N":2,"s":1,"factors":[[[0],[1]]]}"#);
    }
}
