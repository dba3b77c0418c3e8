use super::CombinError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// An element of `I(2m, n)`: entries in `1..=2m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex {
    m: usize,
    entries: Vec<usize>,
}

/// `i' = 2m + 1 - i`.
pub fn prime(m: usize, i: usize) -> usize {
    2 * m + 1 - i
}

impl MultiIndex {
    pub fn new(m: usize, entries: Vec<usize>) -> Result<Self, CombinError> {
        if let Some(bad) = entries.iter().find(|&&e| e == 0 || e > 2 * m) {
            return Err(CombinError::MultiIndex(format!("entry {bad} outside 1..={}", 2 * m)));
        }
        Ok(MultiIndex { m, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Mixed-radix position `sum (i_k - 1) (2m)^(n-k)`; the first entry is most significant.
    pub fn basis_index(&self) -> usize {
        let d = 2 * self.m;
        self.entries.iter().fold(0, |acc, &e| acc * d + (e - 1))
    }

    pub fn from_basis_index(m: usize, n: usize, mut k: usize) -> Result<Self, CombinError> {
        let d = 2 * m;
        if k >= d.pow(n as u32) {
            return Err(CombinError::MultiIndex(format!("basis index {k} out of range")));
        }
        let mut e = vec![0; n];
        for slot in e.iter_mut().rev() {
            *slot = k % d + 1;
            k /= d;
        }
        Ok(MultiIndex { m, entries: e })
    }

    /// Parses the text form `"1 2 1'"`, where `b'` stands for `2m + 1 - b`.
    pub fn parse(m: usize, s: &str) -> Result<Self, CombinError> {
        let mut entries = Vec::new();
        for tok in s.split_whitespace() {
            let (num, primed) = match tok.strip_suffix('\'') {
                Some(t) => (t, true),
                None => (tok, false),
            };
            let b: usize = num
                .parse()
                .map_err(|_| CombinError::MultiIndex(format!("bad token {tok:?}")))?;
            if b == 0 || b > m {
                return Err(CombinError::MultiIndex(format!("token {tok:?} outside 1..={m}")));
            }
            entries.push(if primed { prime(m, b) } else { b });
        }
        MultiIndex::new(m, entries)
    }

    /// Right place permutation: `(i w)_k = i_{w(k)}` where `w(k) = (k) w^-1`.
    pub fn act(&self, w: &super::Permutation) -> MultiIndex {
        let inv = w.inverse();
        MultiIndex {
            m: self.m,
            entries: inv.images().iter().map(|&a| self.entries[a - 1]).collect(),
        }
    }

    /// `true` when no entry is the prime of another.
    pub fn is_pair_free(&self) -> bool {
        let m = self.m;
        self.entries
            .iter()
            .all(|&a| self.entries.iter().all(|&b| a != prime(m, b)))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if e > self.m {
                write!(f, "{}'", prime(self.m, e))?;
            } else {
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

/// All of `I(2m, n)` in lexicographic order (which is also basis-index order).
pub fn all_multi_indices(m: usize, n: usize) -> Vec<MultiIndex> {
    let d = 2 * m;
    (0..d.pow(n as u32))
        .map(|k| MultiIndex::from_basis_index(m, n, k).unwrap())
        .collect()
}

/// Maximal number of disjoint positions `(s, t)` with `i_s = (i_t)'`.
///
/// Pairs only ever join a value with its prime, so the maximum is attained
/// independently for each `{b, b'}`.
pub fn symplectic_length(i: &MultiIndex) -> usize {
    let m = i.m();
    (1..=m)
        .map(|b| {
            let c = i.entries().iter().filter(|&&e| e == b).count();
            let cp = i.entries().iter().filter(|&&e| e == prime(m, b)).count();
            c.min(cp)
        })
        .sum()
}

/// `wt(i)_s = #{j : i_j = s} - #{j : i_j = s'}` for `s = 1..=m`.
pub fn wt(i: &MultiIndex) -> Vec<i64> {
    let m = i.m();
    (1..=m)
        .map(|s| {
            i.entries()
                .iter()
                .map(|&e| if e == s { 1 } else if e == prime(m, s) { -1 } else { 0 })
                .sum()
        })
        .collect()
}

/// Occurrence counts of `1..=2m`.
pub fn bwt(i: &MultiIndex) -> Vec<usize> {
    let mut c = vec![0; 2 * i.m()];
    for &e in i.entries() {
        c[e - 1] += 1;
    }
    c
}
