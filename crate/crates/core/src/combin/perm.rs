use super::CombinError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation of `{1, ..., n}` acting on the right: `images[a - 1] = (a) w`,
/// and `(a)(v w) = ((a) v) w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, CombinError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &a in &images {
            if a == 0 || a > n || seen[a] {
                return Err(CombinError::Permutation(format!("{images:?} is not a bijection")));
            }
            seen[a] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// The simple transposition `s_j = (j, j+1)` in `S_n`.
    pub fn simple(j: usize, n: usize) -> Self {
        assert!(j >= 1 && j < n, "s_{j} not in S_{n}");
        let mut p = Self::identity(n);
        p.images.swap(j - 1, j);
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `(a) w`.
    pub fn apply(&self, a: usize) -> usize {
        self.images[a - 1]
    }

    /// `self * other`: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { images: self.images.iter().map(|&a| other.apply(a)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &a) in self.images.iter().enumerate() {
            inv[a - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &a)| a == i + 1)
    }

    /// Number of inversions `#{a < b : (a) w > (b) w}`.
    pub fn length(&self) -> usize {
        let v = &self.images;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    /// Product `s_{j_1} s_{j_2} ... s_{j_k}` in `S_n`.
    pub fn from_word(word: &[usize], n: usize) -> Result<Self, CombinError> {
        let mut p = Self::identity(n);
        for &j in word {
            if j == 0 || j >= n {
                return Err(CombinError::Permutation(format!("letter s_{j} outside S_{n}")));
            }
            // p s_j: compose on the right, i.e. swap the values j and j+1.
            for a in p.images.iter_mut() {
                if *a == j {
                    *a = j + 1;
                } else if *a == j + 1 {
                    *a = j;
                }
            }
        }
        Ok(p)
    }

    /// The lexicographically smallest reduced word, found by repeatedly
    /// splitting off the smallest left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.images.clone();
        let mut word = Vec::with_capacity(self.length());
        // s_j w has images at positions j, j+1 exchanged; it is shorter iff they are inverted.
        while let Some(j) = (0..w.len().saturating_sub(1)).find(|&j| w[j] > w[j + 1]) {
            word.push(j + 1);
            w.swap(j, j + 1);
        }
        word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Formats a word as `[s2,s1]`.
pub fn word_string(word: &[usize]) -> String {
    let parts: Vec<String> = word.iter().map(|j| format!("s{j}")).collect();
    format!("[{}]", parts.join(","))
}

/// All of `S_n` in lexicographic order of the image sequence.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        // Next lexicographic permutation.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_right_action() {
        let s1 = Permutation::simple(1, 3);
        let s2 = Permutation::simple(2, 3);
        let w = s1.then(&s2);
        // (1) s1 = 2, (2) s2 = 3.
        assert_eq!(w.apply(1), 3);
        assert_eq!(Permutation::from_word(&[1, 2], 3).unwrap(), w);
        assert!(w.then(&w.inverse()).is_identity());
    }

    #[test]
    fn reduced_words_are_reduced() {
        for n in 1..=5 {
            let all = all_permutations(n);
            assert_eq!(all.len(), (1..=n).product::<usize>());
            for w in &all {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length(), "{w}");
                assert_eq!(&Permutation::from_word(&word, n).unwrap(), w);
            }
        }
    }

    #[test]
    fn reduced_word_is_lexicographically_smallest() {
        // The reduced words of w0 in S_3 are 121 and 212.
        let w0 = Permutation::new(vec![3, 2, 1]).unwrap();
        assert_eq!(w0.reduced_word(), vec![1, 2, 1]);
        let w = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(w.reduced_word(), vec![2, 1]);
    }

    #[test]
    fn bad_inputs() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::from_word(&[3], 3).is_err());
    }
}
