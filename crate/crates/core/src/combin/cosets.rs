use super::{CombinError, Permutation};

/// Pairing count `f` for `nu_f = ((2^f), (n - 2f))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EnyangCosetData {
    pub f: usize,
    pub n: usize,
}

impl EnyangCosetData {
    pub fn new(f: usize, n: usize) -> Result<Self, CombinError> {
        if 2 * f > n {
            return Err(CombinError::Subset(format!("f = {f} exceeds n/2 for n = {n}")));
        }
        Ok(EnyangCosetData { f, n })
    }
}

/// Whether `t^nu d` is row standard with increasing first column, where
/// `t^nu` has rows `(1,2), (3,4), ..., (2f-1,2f)` and then `(2f+1, ..., n)`.
pub fn in_d_nu(d: &Permutation, f: usize) -> bool {
    let n = d.n();
    let a = |k: usize| d.apply(k);
    (1..=f).all(|k| a(2 * k - 1) < a(2 * k))
        && (1..f).all(|k| a(2 * k - 1) < a(2 * k + 1))
        && (2 * f + 1..n).all(|k| a(k) < a(k + 1))
}

/// All `d` in `D_{nu_f}`, ordered lexicographically by image sequence.
///
/// Built directly: pick the image set of the second component, then pair the
/// remaining values with the smaller element of each pair increasing down
/// the first column.
pub fn coset_reps_d_nu(f: usize, n: usize) -> Vec<Permutation> {
    assert!(2 * f <= n, "f = {f} exceeds n/2 for n = {n}");
    fn matchings(vals: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if vals.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = vals[0];
        for k in 1..vals.len() {
            let b = vals[k];
            let rest: Vec<usize> = vals[1..].iter().copied().filter(|&x| x != b).collect();
            cur.push(a);
            cur.push(b);
            matchings(&rest, cur, out);
            cur.truncate(cur.len() - 2);
        }
    }
    let mut out = Vec::new();
    for first in subsets(n, 2 * f) {
        let second: Vec<usize> = (1..=n).filter(|x| !first.contains(x)).collect();
        let mut ms = Vec::new();
        matchings(&first, &mut Vec::new(), &mut ms);
        for mut img in ms {
            img.extend(second.iter().copied());
            out.push(Permutation::new(img).expect("bijection by construction"));
        }
    }
    out.sort();
    out
}

/// `D_f = D_{nu_f}` intersected with `S_{2f}`, as permutations of `{1..2f}`.
pub fn coset_reps_d_f(f: usize) -> Vec<Permutation> {
    coset_reps_d_nu(f, 2 * f)
}

/// Increasing `k`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Reduced word `(s_{2f} ... s_{i_{2f}-1}) ... (s_1 ... s_{i_1-1})` for the
/// distinguished element sending `t` to `i_t`.
pub fn d_j_word(j: &[usize], n: usize) -> Result<Vec<usize>, CombinError> {
    if j.len() % 2 != 0 {
        return Err(CombinError::Subset(format!("{j:?} has odd size")));
    }
    if j.windows(2).any(|w| w[0] >= w[1]) || j.iter().any(|&x| x == 0 || x > n) {
        return Err(CombinError::Subset(format!("{j:?} is not an increasing subset of 1..={n}")));
    }
    let mut word = Vec::new();
    for t in (1..=j.len()).rev() {
        word.extend(t..j[t - 1]);
    }
    Ok(word)
}

pub fn d_j(j: &[usize], n: usize) -> Result<(Permutation, Vec<usize>), CombinError> {
    let word = d_j_word(j, n)?;
    Ok((Permutation::from_word(&word, n)?, word))
}

/// Reduced word `(s_{2f-2} s_{2f-1})(s_{2f-4} ... s_{2f-1}) ... (s_2 ... s_{2f-1})`.
pub fn d_0_word(f: usize) -> Vec<usize> {
    let mut word = Vec::new();
    for k in 1..f {
        word.extend(2 * f - 2 * k..2 * f);
    }
    word
}

/// `(a) d_0 = (a+1)/2` for odd `a` and `2f + 1 - a/2` for even `a`.
pub fn d_0(f: usize) -> (Permutation, Vec<usize>) {
    let images = (1..=2 * f)
        .map(|a| if a % 2 == 1 { (a + 1) / 2 } else { 2 * f + 1 - a / 2 })
        .collect();
    (Permutation::new(images).expect("bijection"), d_0_word(f))
}

/// The unique factorization `d = d1 d_J` with `d1` in `D_f` (as an element of `S_n`)
/// and `J` the image of `{1..2f}` under `d`.
pub fn factor_through_d_j(d: &Permutation, f: usize) -> (Permutation, Vec<usize>) {
    let n = d.n();
    let mut j: Vec<usize> = (1..=2 * f).map(|a| d.apply(a)).collect();
    j.sort();
    let (dj, _) = d_j(&j, n).expect("valid subset");
    (d.then(&dj.inverse()), j)
}

/// `sum_f |D_{nu_f}|^2 (n - 2f)!`, with the coset representatives enumerated.
pub fn brauer_rank_sum(n: usize) -> u128 {
    (0..=n / 2)
        .map(|f| {
            let d = coset_reps_d_nu(f, n).len() as u128;
            let fact: u128 = (1..=(n - 2 * f) as u128).product();
            d * d * fact
        })
        .sum()
}

pub fn double_factorial_odd(n: usize) -> u128 {
    // (2n - 1)!!
    (1..=n as u128).map(|k| 2 * k - 1).product()
}
