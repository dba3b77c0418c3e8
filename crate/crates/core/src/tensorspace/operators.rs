use super::SparseMatrix;
use crate::combin::{all_multi_indices, all_permutations, prime, MultiIndex, Permutation};
use crate::report::Check;
use crate::scalars::{LaurentPoly, Ring};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("position {pos} outside 1..={max}")]
    Position { pos: usize, max: usize },
    #[error("operator of dimension {got} is not an operator on V tensor V (expected {expected})")]
    Dimension { got: usize, expected: usize },
    #[error("rank m must be at least 1")]
    Rank,
}

/// Rank and tensor degree of `V^{(x) n}` with `dim V = 2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceConfig {
    pub m: usize,
    pub n: usize,
}

impl SpaceConfig {
    pub fn new(m: usize, n: usize) -> Result<Self, TensorError> {
        if m == 0 {
            return Err(TensorError::Rank);
        }
        Ok(SpaceConfig { m, n })
    }

    pub fn dim(&self) -> usize {
        (2 * self.m).pow(self.n as u32)
    }
}

/// `rho = (m, ..., 1, -1, ..., -m)` and `eps_i = sign(rho_i)`, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoEps {
    pub rho: Vec<i32>,
    pub eps: Vec<i64>,
}

impl RhoEps {
    pub fn new(m: usize) -> Self {
        let m = m as i32;
        let rho: Vec<i32> = (1..=m).rev().chain((1..=m).map(|k| -k)).collect();
        let eps = rho.iter().map(|&r| r.signum() as i64).collect();
        RhoEps { rho, eps }
    }

    pub fn rho(&self, i: usize) -> i32 {
        self.rho[i - 1]
    }

    pub fn eps(&self, i: usize) -> i64 {
        self.eps[i - 1]
    }
}

/// Position of `E_{i,j} (x) E_{k,l}` as `(row, col)`; indices from 1.
fn unit2(m: usize, i: usize, j: usize, k: usize, l: usize) -> (usize, usize) {
    let d = 2 * m;
    ((i - 1) * d + (k - 1), (j - 1) * d + (l - 1))
}

fn mono(c: i64, e: i32) -> LaurentPoly {
    LaurentPoly::monomial(c, e)
}

fn z() -> LaurentPoly {
    LaurentPoly::from_int_terms(&[(1, 1), (-1, -1)])
}

pub fn beta_prime(m: usize) -> SparseMatrix<LaurentPoly> {
    let d = 2 * m;
    let re = RhoEps::new(m);
    let mut t = Vec::new();
    for i in 1..=d {
        let ip = prime(m, i);
        let (r, c) = unit2(m, i, i, i, i);
        t.push((r, c, mono(1, 1)));
        let (r, c) = unit2(m, i, ip, ip, i);
        t.push((r, c, mono(1, -1)));
        for j in 1..=d {
            if j != i && j != ip {
                let (r, c) = unit2(m, i, j, j, i);
                t.push((r, c, LaurentPoly::one()));
            }
        }
        for j in i + 1..=d {
            let (r, c) = unit2(m, i, i, j, j);
            t.push((r, c, z()));
            let s = -re.eps(i) * re.eps(j);
            let (r, c) = unit2(m, i, prime(m, j), ip, j);
            t.push((r, c, &z() * &mono(s, re.rho(j) - re.rho(i))));
        }
    }
    SparseMatrix::from_triplets(d * d, t)
}

pub fn gamma_prime(m: usize) -> SparseMatrix<LaurentPoly> {
    let d = 2 * m;
    let re = RhoEps::new(m);
    let mut t = Vec::new();
    for i in 1..=d {
        for j in 1..=d {
            let (r, c) = unit2(m, i, prime(m, j), prime(m, i), j);
            t.push((r, c, mono(re.eps(i) * re.eps(j), re.rho(j) - re.rho(i))));
        }
    }
    SparseMatrix::from_triplets(d * d, t)
}

pub fn beta(m: usize) -> SparseMatrix<LaurentPoly> {
    let d = 2 * m;
    let re = RhoEps::new(m);
    let q2m1 = LaurentPoly::from_int_terms(&[(2, 1), (0, -1)]);
    let mut t = Vec::new();
    for i in 1..=d {
        let ip = prime(m, i);
        let (r, c) = unit2(m, i, i, i, i);
        t.push((r, c, mono(1, 2)));
        let (r, c) = unit2(m, i, ip, ip, i);
        t.push((r, c, LaurentPoly::one()));
        for j in 1..=d {
            if j != i && j != ip {
                let (r, c) = unit2(m, i, j, j, i);
                t.push((r, c, mono(1, 1)));
            }
        }
        for j in 1..i {
            let (r, c) = unit2(m, i, i, j, j);
            t.push((r, c, q2m1.clone()));
            let s = -re.eps(i) * re.eps(j);
            let (r, c) = unit2(m, i, prime(m, j), ip, j);
            t.push((r, c, &q2m1 * &mono(s, re.rho(i) - re.rho(j))));
        }
    }
    SparseMatrix::from_triplets(d * d, t)
}

pub fn gamma(m: usize) -> SparseMatrix<LaurentPoly> {
    let d = 2 * m;
    let re = RhoEps::new(m);
    let mut t = Vec::new();
    for i in 1..=d {
        for j in 1..=d {
            let (r, c) = unit2(m, i, prime(m, j), prime(m, i), j);
            t.push((r, c, mono(re.eps(i) * re.eps(j), re.rho(i) - re.rho(j))));
        }
    }
    SparseMatrix::from_triplets(d * d, t)
}

/// The Hecke-type operator `q E_ii(x)E_ii + E_ij(x)E_ji (i != j) + (q - q^-1) E_ii(x)E_jj (i < j)`.
pub fn beta_hat(m: usize) -> SparseMatrix<LaurentPoly> {
    let d = 2 * m;
    let mut t = Vec::new();
    for i in 1..=d {
        let (r, c) = unit2(m, i, i, i, i);
        t.push((r, c, mono(1, 1)));
        for j in 1..=d {
            if j != i {
                let (r, c) = unit2(m, i, j, j, i);
                t.push((r, c, LaurentPoly::one()));
            }
            if j > i {
                let (r, c) = unit2(m, i, i, j, j);
                t.push((r, c, z()));
            }
        }
    }
    SparseMatrix::from_triplets(d * d, t)
}

/// `id^{(x)(i-1)} (x) op2 (x) id^{(x)(n-i-1)}` for an operator on `V (x) V`.
pub fn embed_at<T: Ring>(
    op2: &SparseMatrix<T>,
    i: usize,
    n: usize,
    m: usize,
) -> Result<SparseMatrix<T>, TensorError> {
    let d = 2 * m;
    if op2.dim() != d * d {
        return Err(TensorError::Dimension { got: op2.dim(), expected: d * d });
    }
    if i == 0 || i + 1 > n {
        return Err(TensorError::Position { pos: i, max: n.saturating_sub(1) });
    }
    let after = d.pow((n - i - 1) as u32);
    let before = d.pow((i - 1) as u32);
    let dim = before * d * d * after;
    let mut t = Vec::with_capacity(op2.nnz() * before * after);
    for x in 0..before {
        for y in 0..d * d {
            for (yc, v) in op2.row(y) {
                for zz in 0..after {
                    t.push(((x * d * d + y) * after + zz, (x * d * d + yc) * after + zz, v.clone()));
                }
            }
        }
    }
    Ok(SparseMatrix::from_triplets(dim, t))
}

/// Product of the matrices in the given order, starting from `identity`.
pub fn word_product<T: Ring>(
    identity: &SparseMatrix<T>,
    letters: impl IntoIterator<Item = SparseMatrix<T>>,
) -> SparseMatrix<T> {
    letters.into_iter().fold(identity.clone(), |acc, x| acc.mul(&x))
}

/// Describes the first nonzero entry of a residual, for failure witnesses.
pub fn residual_witness<T: Ring>(res: &SparseMatrix<T>) -> Option<String> {
    res.first_nonzero().map(|(r, c, x)| format!("entry ({r},{c}) = {x:?}"))
}

/// `b (b - (q - q^-1)(id - g)) - id`, which vanishes iff `b - b^-1 = (q - q^-1)(id - g)`.
pub fn bg_residual(b: &SparseMatrix<LaurentPoly>, g: &SparseMatrix<LaurentPoly>) -> SparseMatrix<LaurentPoly> {
    let id = SparseMatrix::laurent_identity(b.dim());
    let inner = b.sub(&id.sub(g).scale(&z()));
    b.mul(&inner).sub(&id)
}

pub fn relation_bg_check(m: usize) -> Check {
    let res = bg_residual(&beta_prime(m), &gamma_prime(m));
    Check::holds(format!("skein identity m={m}"), res.is_zero(), residual_witness(&res))
}

/// `beta_hat` placed at the letters of `word`, multiplied in word order.
pub fn hecke_word_action(word: &[usize], m: usize, n: usize) -> Result<SparseMatrix<LaurentPoly>, TensorError> {
    let bh = beta_hat(m);
    let id = SparseMatrix::laurent_identity(SpaceConfig::new(m, n)?.dim());
    let mats = word.iter().map(|&j| embed_at(&bh, j, n, m)).collect::<Result<Vec<_>, _>>()?;
    Ok(word_product(&id, mats))
}

/// `beta'` placed at the letters of `word`, multiplied in word order.
pub fn beta_prime_word_action(word: &[usize], m: usize, n: usize) -> Result<SparseMatrix<LaurentPoly>, TensorError> {
    let bp = beta_prime(m);
    let id = SparseMatrix::laurent_identity(SpaceConfig::new(m, n)?.dim());
    let mats = word.iter().map(|&j| embed_at(&bp, j, n, m)).collect::<Result<Vec<_>, _>>()?;
    Ok(word_product(&id, mats))
}

fn basis_row(i: &MultiIndex) -> Vec<(usize, LaurentPoly)> {
    vec![(i.basis_index(), LaurentPoly::one())]
}

/// Checks, for every pair-free `i` and every `w`, that `v_i T_w = v_i That_w`,
/// and that `v_i T_w = v_{i w}` when `i` is strictly decreasing.
/// Indices containing a symplectic pair are outside the statement and skipped.
pub fn pairfree_compatibility_check(m: usize, n: usize) -> Result<Vec<Check>, TensorError> {
    let perms: Vec<(Permutation, SparseMatrix<LaurentPoly>, SparseMatrix<LaurentPoly>)> = all_permutations(n)
        .into_iter()
        .map(|w| {
            let word = w.reduced_word();
            let t = beta_prime_word_action(&word, m, n)?;
            let th = hecke_word_action(&word, m, n)?;
            Ok((w, t, th))
        })
        .collect::<Result<_, TensorError>>()?;
    let mut hecke_fail = None;
    let mut place_fail = None;
    let (mut hecke_count, mut place_count, mut skipped) = (0usize, 0usize, 0usize);
    for i in all_multi_indices(m, n) {
        if !i.is_pair_free() {
            skipped += 1;
            continue;
        }
        let decreasing = i.entries().windows(2).all(|w| w[0] > w[1]);
        let v = basis_row(&i);
        for (w, t, th) in &perms {
            let a = t.apply_row(&v);
            hecke_count += 1;
            if a != th.apply_row(&v) && hecke_fail.is_none() {
                hecke_fail = Some(format!("i=({i}) w={w}"));
            }
            if decreasing {
                place_count += 1;
                if a != basis_row(&i.act(w)) && place_fail.is_none() {
                    place_fail = Some(format!("i=({i}) w={w}"));
                }
            }
        }
    }
    let _ = skipped;
    Ok(vec![
        Check::holds(
            format!("pair-free hecke agreement m={m} n={n} ({hecke_count} cases)"),
            hecke_fail.is_none(),
            hecke_fail,
        ),
        Check::holds(
            format!("decreasing place permutation m={m} n={n} ({place_count} cases)"),
            place_fail.is_none(),
            place_fail,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::bmw_x;

    fn id(dim: usize) -> SparseMatrix<LaurentPoly> {
        SparseMatrix::laurent_identity(dim)
    }

    #[test]
    fn skein_identity_holds() {
        for m in 1..=3 {
            let c = relation_bg_check(m);
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn perturbed_skein_identity_fails_with_witness() {
        let mut bp = beta_prime(2);
        bp = bp.add(&SparseMatrix::from_triplets(16, [(3, 5, LaurentPoly::one())]));
        let res = bg_residual(&bp, &gamma_prime(2));
        assert!(!res.is_zero());
        assert!(residual_witness(&res).unwrap().starts_with("entry ("));
    }

    #[test]
    fn bar_inverse_relation() {
        // beta' = bar(q beta^-1), i.e. beta' * bar(beta) = q^-1 id.
        for m in 1..=3 {
            let d = 4 * m * m;
            let lhs = beta_prime(m).mul(&beta(m).bar());
            assert_eq!(lhs, id(d).scale(&LaurentPoly::monomial(1, -1)), "m={m}");
        }
    }

    #[test]
    fn symmetric_operators() {
        for m in 1..=3 {
            for op in [beta(m), gamma(m), beta_prime(m), gamma_prime(m), beta_hat(m)] {
                assert!(op.is_symmetric(), "m={m}");
            }
        }
    }

    #[test]
    fn gamma_prime_is_idempotent_up_to_loop() {
        for m in 1..=3 {
            let g = gamma_prime(m);
            assert_eq!(g.mul(&g), g.scale(&bmw_x(m)), "m={m}");
            // One nonzero column pattern means rank one.
            let support: std::collections::BTreeSet<Vec<usize>> = (0..g.dim())
                .filter(|&r| !g.row(r).is_empty())
                .map(|r| g.row(r).iter().map(|(c, _)| *c).collect())
                .collect();
            assert_eq!(support.len(), 1);
            // beta' gamma' = r^-1 gamma' with r = -q^(2m+1)
            assert_eq!(beta_prime(m).mul(&g), g.scale(&LaurentPoly::monomial(-1, -(2 * m as i32 + 1))));
        }
    }

    #[test]
    fn hecke_quadratic_and_braid() {
        for m in 1..=2 {
            let bh = beta_hat(m);
            let d = bh.dim();
            let a = bh.sub(&id(d).scale(&LaurentPoly::q()));
            let b = bh.add(&id(d).scale(&LaurentPoly::monomial(1, -1)));
            assert!(a.mul(&b).is_zero());
            for op in [beta_hat(m), beta_prime(m)] {
                let x = embed_at(&op, 1, 3, m).unwrap();
                let y = embed_at(&op, 2, 3, m).unwrap();
                assert_eq!(x.mul(&y).mul(&x), y.mul(&x).mul(&y));
            }
            let e1 = embed_at(&gamma_prime(m), 1, 3, m).unwrap();
            let e2 = embed_at(&gamma_prime(m), 2, 3, m).unwrap();
            assert_eq!(e1.mul(&e2).mul(&e1), e1);
        }
    }

    #[test]
    fn embedding_matches_kronecker() {
        for m in 1..=2 {
            let d = 2 * m;
            let op = beta_prime(m);
            let i1 = id(d);
            assert_eq!(embed_at(&op, 1, 2, m).unwrap(), op);
            assert_eq!(embed_at(&op, 1, 3, m).unwrap(), op.kron(&i1));
            assert_eq!(embed_at(&op, 2, 3, m).unwrap(), i1.kron(&op));
            assert_eq!(embed_at(&op, 2, 4, m).unwrap(), i1.kron(&op).kron(&i1));
        }
        assert!(matches!(embed_at(&beta_prime(1), 3, 3, 1), Err(TensorError::Position { .. })));
        assert!(matches!(embed_at(&beta_prime(1), 1, 3, 2), Err(TensorError::Dimension { .. })));
    }

    #[test]
    fn rho_and_eps() {
        let re = RhoEps::new(2);
        assert_eq!(re.rho, vec![2, 1, -1, -2]);
        assert_eq!(re.eps, vec![1, 1, -1, -1]);
        assert_eq!(SpaceConfig::new(2, 3).unwrap().dim(), 64);
        assert!(SpaceConfig::new(0, 1).is_err());
    }

    #[test]
    fn pairfree_vectors() {
        for (m, n) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
            for c in pairfree_compatibility_check(m, n).unwrap() {
                assert!(c.passed(), "{c:?}");
            }
        }
    }
}
