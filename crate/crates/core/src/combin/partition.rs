use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinError {
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("invalid multi-index: {0}")]
    MultiIndex(String),
    #[error("invalid permutation: {0}")]
    Permutation(String),
    #[error("invalid subset: {0}")]
    Subset(String),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, CombinError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(CombinError::Partition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CombinError::Partition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let w = self.0.first().copied().unwrap_or(0);
        Partition((1..=w).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = CombinError;
    fn try_from(v: Vec<usize>) -> Result<Self, CombinError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = CombinError;
    fn from_str(s: &str) -> Result<Self, CombinError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| CombinError::Partition(format!("expected [a,b,...], got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CombinError::Partition(format!("{s:?}: {e}")))?;
        Partition::new(parts)
    }
}

/// Partitions of `k` with at most `m` parts, in reverse-lexicographic order.
pub fn partitions_bounded(k: usize, m: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, m, &mut Vec::new(), &mut out);
    out
}

/// The index set `{(lambda, l) : 0 <= l <= n/2, lambda in partitions_bounded(n - 2l, m)}`,
/// ordered by `l` and then reverse-lexicographically.
pub fn lambda_n(m: usize, n: usize) -> Vec<(Partition, usize)> {
    (0..=n / 2)
        .flat_map(|l| partitions_bounded(n - 2 * l, m).into_iter().map(move |p| (p, l)))
        .collect()
}

/// Number of standard tableaux of shape `lambda` (hook length formula).
pub fn std_count(lambda: &Partition) -> u128 {
    let t = lambda.transpose();
    let n = lambda.size() as u128;
    let mut num: u128 = (1..=n).product();
    let mut hooks: u128 = 1;
    for (r, &row) in lambda.parts().iter().enumerate() {
        for c in 0..row {
            hooks *= (row - c - 1 + t.parts()[c] - r - 1 + 1) as u128;
        }
    }
    num /= hooks;
    num
}

/// Result of comparing two partitions under the order used for the cellular filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecOrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

fn prec_strict(l: &Partition, u: &Partition) -> bool {
    let (ls, us) = (l.size(), u.size());
    if ls != us {
        // Unequal sizes: l precedes u when |l| - |u| is a positive even number,
        // so larger partitions come first.
        return ls > us && (ls - us) % 2 == 0;
    }
    let (lt, ut) = (l.transpose(), u.transpose());
    for (a, b) in lt.parts().iter().chain(std::iter::repeat(&0)).zip(ut.parts().iter().chain(std::iter::repeat(&0))) {
        if a != b {
            return a < b;
        }
        if *a == 0 {
            break;
        }
    }
    false
}

/// Compares `lambda` and `mu`: `Less` means `lambda` precedes `mu`.
pub fn order_prec(lambda: &Partition, mu: &Partition) -> PrecOrder {
    if lambda == mu {
        PrecOrder::Equal
    } else if prec_strict(lambda, mu) {
        PrecOrder::Less
    } else if prec_strict(mu, lambda) {
        PrecOrder::Greater
    } else {
        PrecOrder::Incomparable
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn bounded_enumeration() {
        assert_eq!(partitions_bounded(3, 2), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(partitions_bounded(2, 1), vec![p(&[2])]);
        assert_eq!(partitions_bounded(0, 0), vec![Partition::empty()]);
        assert_eq!(partitions_bounded(4, 3), vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])]);
    }

    #[test]
    fn bounded_count_matches_brute_force() {
        // Oracle: all weakly decreasing 4-tuples with entries in 0..=4 summing to 4.
        let mut count = 0;
        for a in 0..=4usize {
            for b in 0..=a {
                for c in 0..=b {
                    for d in 0..=c {
                        if a + b + c + d == 4 {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(partitions_bounded(4, 4).len(), count);
        assert_eq!(count, 5);
    }

    #[test]
    fn index_set() {
        assert_eq!(lambda_n(1, 2), vec![(p(&[2]), 0), (Partition::empty(), 1)]);
        assert_eq!(
            lambda_n(2, 2),
            vec![(p(&[2]), 0), (p(&[1, 1]), 0), (Partition::empty(), 1)]
        );
        assert_eq!(lambda_n(1, 3), vec![(p(&[3]), 0), (p(&[1]), 1)]);
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[3, 1, 1]).to_string(), "[3,1,1]");
        assert_eq!("[3,1,1]".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[0]".parse::<Partition>().is_err());
    }

    #[test]
    fn transpose_and_hooks() {
        assert_eq!(p(&[3, 3, 2, 1]).transpose(), p(&[4, 3, 2]));
        assert_eq!(std_count(&p(&[2, 1])), 2);
        assert_eq!(std_count(&p(&[3, 2])), 5);
        assert_eq!(std_count(&Partition::empty()), 1);
    }

    #[test]
    fn prec_examples() {
        assert_eq!(order_prec(&p(&[3, 1, 1]), &p(&[2, 2, 1])), PrecOrder::Less);
        assert_eq!(order_prec(&p(&[3]), &p(&[1])), PrecOrder::Less);
        assert_eq!(order_prec(&p(&[1]), &p(&[3])), PrecOrder::Greater);
        assert_eq!(order_prec(&p(&[2]), &p(&[1])), PrecOrder::Incomparable);
        assert_eq!(order_prec(&p(&[2, 1]), &p(&[2, 1])), PrecOrder::Equal);
    }
}
