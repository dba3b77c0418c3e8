//! Coordinate functionals on `End(V^{(x) n})`, wreath operations, the quantum
//! symplectic bideterminants and `d_q`, paired against the Schur algebra.
//!
//! The Schur algebra is realized as the commutant of the BMW generators with
//! the tensor positions reversed; on that algebra the relations built from
//! `beta` and `gamma` hold (see [`schur_basis`]).

mod checks;

pub use checks::{
    comult_factorization_check, dq_checks, frt_annihilation_check, oehms_rank_check, OehmsOutcome,
};

use crate::centralizer::{graded_commutant, phi_generators, tensor_weights, CentralizerError};
use crate::combin::{all_permutations, column_cells, MultiIndex, Partition, Permutation};
use crate::scalars::{Evaluation, Field, LaurentPoly, Ring, ScalarError};
use crate::tensorspace::{beta, embed_at, gamma, RhoEps, SparseMatrix};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoordError {
    #[error("degree mismatch: {0} vs {1}")]
    Degree(usize, usize),
    #[error("index length {got} does not match degree {want}")]
    IndexLength { got: usize, want: usize },
    #[error(transparent)]
    Centralizer(#[from] CentralizerError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `sum c_{i,j} x_{i,j}`, keyed by basis indices of `V^{(x) degree}`.
/// On `f` it evaluates to `sum c_{i,j} f_{i,j}`, with `f_{i,j}` the coefficient of `v_i` in `f(v_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional<T: Ring> {
    pub m: usize,
    pub degree: usize,
    coeffs: BTreeMap<(usize, usize), T>,
}

impl<T: Ring> Functional<T> {
    pub fn zero(m: usize, degree: usize) -> Self {
        Functional { m, degree, coeffs: BTreeMap::new() }
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), T> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn dim(&self) -> usize {
        (2 * self.m).pow(self.degree as u32)
    }

    fn add_term(&mut self, key: (usize, usize), c: T) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&key) {
            Some(v) => {
                *v = v.plus(&c);
                if v.is_zero() {
                    self.coeffs.remove(&key);
                }
            }
            None => {
                self.coeffs.insert(key, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, CoordError> {
        if self.degree != o.degree {
            return Err(CoordError::Degree(self.degree, o.degree));
        }
        let mut out = self.clone();
        for (k, v) in &o.coeffs {
            out.add_term(*k, v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Functional::zero(self.m, self.degree);
        for (k, v) in &self.coeffs {
            out.add_term(*k, v.times(c));
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Result<Self, CoordError> {
        let mut out = self.clone();
        if self.degree != o.degree {
            return Err(CoordError::Degree(self.degree, o.degree));
        }
        for (k, v) in &o.coeffs {
            out.add_term(*k, v.negate());
        }
        Ok(out)
    }

    /// `<F, f>`.
    pub fn pair(&self, f: &SparseMatrix<T>, zero: &T) -> Result<T, CoordError> {
        if f.dim() != self.dim() {
            return Err(CoordError::Degree(self.degree, f.dim()));
        }
        let mut acc = zero.clone();
        for ((i, j), c) in &self.coeffs {
            if let Some(v) = f.get(*i, *j) {
                acc = acc.plus(&c.times(v));
            }
        }
        Ok(acc)
    }

    /// `(mu wr x_{i,j}) = sum_k mu_{i,k} x_{k,j}`, extended linearly.
    pub fn wreath_left(&self, mu: &SparseMatrix<T>) -> Result<Self, CoordError> {
        if mu.dim() != self.dim() {
            return Err(CoordError::Degree(self.degree, mu.dim()));
        }
        let mut out = Functional::zero(self.m, self.degree);
        for ((i, j), c) in &self.coeffs {
            for (k, v) in mu.row(*i) {
                out.add_term((*k, *j), c.times(v));
            }
        }
        Ok(out)
    }

    /// `(x_{i,j} wr mu) = sum_k x_{i,k} mu_{k,j}`, extended linearly.
    pub fn wreath_right(&self, mu: &SparseMatrix<T>) -> Result<Self, CoordError> {
        if mu.dim() != self.dim() {
            return Err(CoordError::Degree(self.degree, mu.dim()));
        }
        let mt = mu.transpose();
        let mut out = Functional::zero(self.m, self.degree);
        for ((i, j), c) in &self.coeffs {
            for (k, v) in mt.row(*j) {
                out.add_term((*i, *k), c.times(v));
            }
        }
        Ok(out)
    }

    /// Concatenation of indices: `(F G)_{(i k),(j l)} = F_{i,j} G_{k,l}`.
    pub fn product(&self, o: &Self) -> Self {
        let shift = o.dim();
        let mut out = Functional::zero(self.m, self.degree + o.degree);
        for ((i, j), a) in &self.coeffs {
            for ((k, l), b) in &o.coeffs {
                out.add_term((i * shift + k, j * shift + l), a.times(b));
            }
        }
        out
    }

    pub fn try_map<U: Ring>(&self, f: impl Fn(&T) -> Result<U, ScalarError>) -> Result<Functional<U>, ScalarError> {
        let mut out = Functional::zero(self.m, self.degree);
        for (k, v) in &self.coeffs {
            out.add_term(*k, f(v)?);
        }
        Ok(out)
    }
}

impl Functional<LaurentPoly> {
    /// The coordinate function `x_{i,j}`.
    pub fn coordinate(i: &MultiIndex, j: &MultiIndex) -> Result<Self, CoordError> {
        if i.n() != j.n() {
            return Err(CoordError::IndexLength { got: j.n(), want: i.n() });
        }
        let mut f = Functional::zero(i.m(), i.n());
        f.add_term((i.basis_index(), j.basis_index()), LaurentPoly::one());
        Ok(f)
    }

    /// The degree-zero unit.
    pub fn unit(m: usize) -> Self {
        let mut f = Functional::zero(m, 0);
        f.add_term((0, 0), LaurentPoly::one());
        f
    }

    pub fn evaluate<F: Field, E: Evaluation<F>>(&self, ev: &E) -> Result<Functional<F>, ScalarError> {
        self.try_map(|x| ev.apply(x))
    }

    /// JSON list of `{"i","j","coeff"}`.
    pub fn dump(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term<'a> {
            i: String,
            j: String,
            coeff: &'a LaurentPoly,
        }
        let show = |k: usize| {
            MultiIndex::from_basis_index(self.m, self.degree, k).map(|x| x.to_string()).unwrap_or_default()
        };
        let terms: Vec<Term> = self.coeffs.iter().map(|((i, j), c)| Term { i: show(*i), j: show(*j), coeff: c }).collect();
        serde_json::to_value(terms).expect("serializable")
    }
}

/// `beta(w)`: the product of `beta_{j}` along a reduced word of `w`.
pub fn beta_of(w: &Permutation, m: usize) -> SparseMatrix<LaurentPoly> {
    let n = w.n();
    let b = beta(m);
    let id = SparseMatrix::laurent_identity((2 * m).pow(n as u32));
    w.reduced_word()
        .into_iter()
        .fold(id, |acc, j| acc.mul(&embed_at(&b, j, n, m).expect("letter in range")))
}

/// The column group of `lambda`: permutations of positions (read column by
/// column) that stay inside their column.
pub fn column_group(lambda: &Partition) -> Vec<Permutation> {
    let n = lambda.size();
    let mut out = vec![Permutation::identity(n)];
    let mut start = 0;
    for &h in lambda.transpose().parts() {
        let mut next = Vec::new();
        for base in &out {
            for s in all_permutations(h) {
                let mut img = base.images().to_vec();
                for (k, &a) in s.images().iter().enumerate() {
                    img[start + k] = start + a;
                }
                next.push(Permutation::new(img).expect("block permutation"));
            }
        }
        out = next;
        start += h;
    }
    out
}

/// `T_q^lambda(i : j) = sum_{w in column group} (-q^2)^{-l(w)} beta(w) wr x_{i,j}`.
pub fn bideterminant(lambda: &Partition, i: &MultiIndex, j: &MultiIndex) -> Result<Functional<LaurentPoly>, CoordError> {
    let k = lambda.size();
    if i.n() != k || j.n() != k {
        return Err(CoordError::IndexLength { got: i.n().max(j.n()), want: k });
    }
    let m = i.m();
    if k == 0 {
        return Ok(Functional::unit(m));
    }
    let x = Functional::coordinate(i, j)?;
    let mut acc = Functional::zero(m, k);
    for w in column_group(lambda) {
        let len = w.length() as i32;
        let c = LaurentPoly::monomial(if len % 2 == 0 { 1 } else { -1 }, -2 * len);
        acc = acc.add(&x.wreath_left(&beta_of(&w, m))?.scale(&c))?;
    }
    Ok(acc)
}

/// `d_q = -q^{-rho_k - rho_l} eps_k eps_l x_{(k,k'),(l,l')} wr gamma`.
pub fn dq(m: usize, k: usize, l: usize) -> Functional<LaurentPoly> {
    use crate::combin::prime;
    let re = RhoEps::new(m);
    let a = MultiIndex::new(m, vec![k, prime(m, k)]).expect("in range");
    let b = MultiIndex::new(m, vec![l, prime(m, l)]).expect("in range");
    let c = LaurentPoly::monomial(-re.eps(k) * re.eps(l), -re.rho(k) - re.rho(l));
    Functional::coordinate(&a, &b).expect("same length").wreath_right(&gamma(m)).expect("degree 2").scale(&c)
}

/// `D = d_q^l T_q^lambda(i : j)`, with `d_q` taken at `k = l = 1`.
pub fn oehms_functional(lambda: &Partition, l: usize, i: &MultiIndex, j: &MultiIndex) -> Result<Functional<LaurentPoly>, CoordError> {
    let mut f = bideterminant(lambda, i, j)?;
    let d = dq(i.m(), 1, 1);
    for _ in 0..l {
        f = d.product(&f);
    }
    Ok(f)
}

/// Basis index of the multi-index read backwards.
pub fn reversed_index(m: usize, n: usize, a: usize) -> usize {
    let mut e = MultiIndex::from_basis_index(m, n, a).expect("in range").entries().to_vec();
    e.reverse();
    MultiIndex::new(m, e).expect("in range").basis_index()
}

/// `P f P` with `P` reversing tensor positions.
pub fn reverse_positions<T: Ring>(f: &SparseMatrix<T>, m: usize, n: usize) -> SparseMatrix<T> {
    let r: Vec<usize> = (0..f.dim()).map(|a| reversed_index(m, n, a)).collect();
    SparseMatrix::from_triplets(f.dim(), f.entries().map(|(a, b, v)| (r[a], r[b], v.clone())))
}

/// A basis of the Schur algebra at degree `n`: the commutant of the BMW
/// generators, conjugated by the position reversal.
pub fn schur_basis<F: Field, E: Evaluation<F>>(m: usize, n: usize, ev: &E) -> Result<Vec<SparseMatrix<F>>, CoordError> {
    let d = (2 * m).pow(n as u32);
    let gens: Vec<SparseMatrix<F>> = phi_generators(m, n).iter().map(|g| g.evaluate(ev)).collect::<Result<_, _>>()?;
    let c = graded_commutant(&gens, &tensor_weights(m, n), &ev.one(), ev.mode())?;
    debug_assert_eq!(c.d, d);
    Ok(c.matrices().iter().map(|f| reverse_positions(f, m, n)).collect())
}

/// Fillings of `lambda` strictly increasing down columns in `1 < 2 < ... < 2m`, read column by column.
pub fn column_strict_fillings(lambda: &Partition, m: usize) -> Vec<MultiIndex> {
    let cells = column_cells(lambda);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(cells.len());
    fn go(k: usize, cells: &[(usize, usize)], m: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if k == cells.len() {
            out.push(MultiIndex::new(m, cur.clone()).expect("in range"));
            return;
        }
        let lo = if cells[k].0 > 0 { cur[k - 1] + 1 } else { 1 };
        for v in lo..=2 * m {
            cur.push(v);
            go(k + 1, cells, m, cur, out);
            cur.pop();
        }
    }
    go(0, &cells, m, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::all_multi_indices;
    use crate::scalars::{ExactField, RatFunc};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn mi(m: usize, v: &[usize]) -> MultiIndex {
        MultiIndex::new(m, v.to_vec()).unwrap()
    }

    fn unit_matrix(d: usize, a: usize, b: usize) -> SparseMatrix<LaurentPoly> {
        SparseMatrix::from_triplets(d, [(a, b, LaurentPoly::one())])
    }

    #[test]
    fn coordinate_pairing_is_exact_duality() {
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let idx = all_multi_indices(m, n);
            let d = idx.len();
            for i in &idx {
                for j in &idx {
                    let x = Functional::coordinate(i, j).unwrap();
                    for a in 0..d {
                        for b in [0, j.basis_index(), d - 1] {
                            let v = x.pair(&unit_matrix(d, a, b), &LaurentPoly::zero()).unwrap();
                            let expect = a == i.basis_index() && b == j.basis_index();
                            assert_eq!(v.is_one(), expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wreath_identities() {
        let m = 1;
        let x = Functional::coordinate(&mi(m, &[1, 2]), &mi(m, &[2, 2])).unwrap();
        let id = SparseMatrix::laurent_identity(4);
        assert_eq!(x.wreath_left(&id).unwrap(), x);
        assert_eq!(x.wreath_right(&id).unwrap(), x);
        let (b, g) = (beta(1), gamma(1));
        assert_eq!(
            x.wreath_left(&b.mul(&g)).unwrap(),
            x.wreath_left(&g).unwrap().wreath_left(&b).unwrap()
        );
        // Pairing transport: <mu wr x, f> = <x, mu f>, <x wr mu, f> = <x, f mu>.
        let f = crate::bmw::represent(
            &crate::bmw::BmwWord::new(2, vec![crate::bmw::Letter::T(1), crate::bmw::Letter::E(1)]).unwrap(),
            1,
        );
        let z = LaurentPoly::zero();
        assert_eq!(x.wreath_left(&b).unwrap().pair(&f, &z).unwrap(), x.pair(&b.mul(&f), &z).unwrap());
        assert_eq!(x.wreath_right(&b).unwrap().pair(&f, &z).unwrap(), x.pair(&f.mul(&b), &z).unwrap());
        assert!(matches!(x.wreath_left(&SparseMatrix::laurent_identity(2)), Err(CoordError::Degree(..))));
    }

    #[test]
    fn beta_of_words() {
        let m = 1;
        assert_eq!(beta_of(&Permutation::identity(3), m), SparseMatrix::laurent_identity(8));
        assert_eq!(beta_of(&Permutation::simple(1, 2), m), beta(m));
        let b = beta(m);
        let (b1, b2) = (embed_at(&b, 1, 3, m).unwrap(), embed_at(&b, 2, 3, m).unwrap());
        let w0 = Permutation::new(vec![3, 2, 1]).unwrap();
        assert_eq!(beta_of(&w0, m), b1.mul(&b2).mul(&b1));
        assert_eq!(b1.mul(&b2).mul(&b1), b2.mul(&b1).mul(&b2));
    }

    #[test]
    fn bideterminant_basics() {
        let i = mi(2, &[1, 2]);
        let j = mi(2, &[2, 3]);
        assert_eq!(bideterminant(&p(&[2]), &i, &j).unwrap(), Functional::coordinate(&i, &j).unwrap());
        let e = bideterminant(&Partition::empty(), &mi(2, &[]), &mi(2, &[])).unwrap();
        assert_eq!(e, Functional::unit(2));
        assert_eq!(Functional::unit(2).product(&e), e);
        let x = Functional::coordinate(&i, &j).unwrap();
        assert_eq!(Functional::unit(2).product(&x), x);
        assert_eq!(x.product(&Functional::unit(2)), x);
        assert!(bideterminant(&p(&[2]), &mi(2, &[1]), &j).is_err());
    }

    #[test]
    fn repeated_column_entries_vanish() {
        // lambda = (1,1), m = 1. The symmetrizer acts on the row index, so a repeated
        // column on that side kills the functional on all of End; on the column side
        // it vanishes on the Schur algebra, where beta commutes with every element.
        let lam = p(&[1, 1]);
        let s = schur_basis(1, 2, &ExactField).unwrap();
        let mut nonzero_on_end = false;
        for h in 1..=2 {
            for i in all_multi_indices(1, 2) {
                let t = bideterminant(&lam, &mi(1, &[h, h]), &i).unwrap();
                for a in 0..4 {
                    for b in 0..4 {
                        assert!(t.pair(&unit_matrix(4, a, b), &LaurentPoly::zero()).unwrap().is_zero());
                    }
                }
                let t = bideterminant(&lam, &i, &mi(1, &[h, h])).unwrap();
                nonzero_on_end |= !t.is_zero();
                let te = t.evaluate(&ExactField).unwrap();
                for f in &s {
                    assert!(te.pair(f, &RatFunc::zero()).unwrap().is_zero(), "h={h} i={i}");
                }
            }
        }
        assert!(nonzero_on_end);
    }

    #[test]
    fn column_swap_alternation() {
        // lambda = (1,1), m = 2: by direct expansion, row (2,1) of id - q^-2 beta is
        // q^-2 e_21 - q^-1 e_12 = -q^-1 (e_12 - q^-1 e_21), i.e. -q^-1 times row (1,2).
        let m = 2;
        let lam = p(&[1, 1]);
        let c = LaurentPoly::monomial(-1, -1);
        for j in all_multi_indices(m, 2) {
            let a = bideterminant(&lam, &mi(m, &[1, 2]), &j).unwrap();
            let b = bideterminant(&lam, &mi(m, &[2, 1]), &j).unwrap();
            assert_eq!(b, a.scale(&c), "j={j}");
        }
        // On the Schur algebra the same alternation holds in the column index.
        let s = schur_basis(m, 2, &ExactField).unwrap();
        let i = mi(m, &[1, 2]);
        let a = bideterminant(&lam, &i, &mi(m, &[1, 2])).unwrap().evaluate(&ExactField).unwrap();
        let b = bideterminant(&lam, &i, &mi(m, &[2, 1])).unwrap().evaluate(&ExactField).unwrap();
        let cr = RatFunc::from_laurent(&c);
        for f in &s {
            let (va, vb) = (a.pair(f, &RatFunc::zero()).unwrap(), b.pair(f, &RatFunc::zero()).unwrap());
            assert_eq!(vb, va.mul(&cr));
        }
    }

    #[test]
    fn column_group_sizes() {
        assert_eq!(column_group(&p(&[2, 1])).len(), 2);
        assert_eq!(column_group(&p(&[1, 1, 1])).len(), 6);
        assert_eq!(column_group(&p(&[2, 2])).len(), 4);
        assert_eq!(column_group(&p(&[3])).len(), 1);
    }

    #[test]
    fn reversal_is_involution() {
        let f = beta_of(&Permutation::new(vec![2, 3, 1]).unwrap(), 1);
        assert_eq!(reverse_positions(&reverse_positions(&f, 1, 3), 1, 3), f);
        assert_eq!(reversed_index(2, 2, 1), 4);
    }

    #[test]
    fn fillings() {
        assert_eq!(column_strict_fillings(&p(&[1, 1]), 1).len(), 1);
        assert_eq!(column_strict_fillings(&p(&[2]), 1).len(), 4);
        assert_eq!(column_strict_fillings(&p(&[1, 1]), 2).len(), 6);
    }

    #[test]
    fn functional_dump() {
        let x = Functional::coordinate(&mi(1, &[1, 2]), &mi(1, &[2, 1])).unwrap();
        let v = x.dump();
        assert_eq!(v[0]["i"], "1 1'");
        assert_eq!(v[0]["j"], "1' 1");
    }
}
