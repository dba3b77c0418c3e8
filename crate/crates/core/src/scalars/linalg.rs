//! Exact elimination over a [`Field`].
//!
//! Vectors are sparse, sorted by column. Pivots are always the first nonzero
//! entry, so every basis produced here depends only on the input order.

use super::{Field, LaurentPoly, ScalarError};
use rayon::prelude::*;
use std::collections::BTreeMap;

pub type SparseVec<F> = Vec<(usize, F)>;

/// Widest column range reduced with a dense scratch vector. Wider ranges use
/// an ordered map, which keeps memory proportional to the fill.
const DENSE_SCRATCH_LIMIT: usize = 4096;

/// Drops explicit zeros and sorts by column.
pub fn sparse_from_dense<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse<F: Field>(v: &SparseVec<F>, n: usize, zero: &F) -> Vec<F> {
    let mut out = vec![zero.clone(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Row echelon form grown one vector at a time; rows are normalized so the
/// pivot entry is one.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ncols: usize,
    rows: Vec<SparseVec<F>>,
    row_of_pivot: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), row_of_pivot: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    /// Pivot columns in ascending order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.row_of_pivot[c].is_some()).collect()
    }

    fn reduce_inner(&self, v: &SparseVec<F>, skip: Option<usize>) -> SparseVec<F> {
        let Some(first) = v.first() else {
            return Vec::new();
        };
        let zero = first.1.zero_like();
        let start = first.0;
        if self.ncols - start > DENSE_SCRATCH_LIMIT {
            return self.reduce_sparse(v, skip, zero);
        }
        let mut scratch: Vec<Option<F>> = vec![None; self.ncols - start];
        for (i, x) in v {
            assert!(*i < self.ncols, "column {i} out of range");
            scratch[i - start] = Some(x.clone());
        }
        for c in start..self.ncols {
            if Some(c) == skip {
                continue;
            }
            let Some(r) = self.row_of_pivot[c] else { continue };
            let coef = match &scratch[c - start] {
                Some(x) if !x.is_zero() => x.clone(),
                _ => continue,
            };
            for (j, y) in &self.rows[r] {
                let slot = &mut scratch[j - start];
                let cur = slot.take().unwrap_or_else(|| zero.clone());
                let nv = cur.minus(&coef.times(y));
                *slot = if nv.is_zero() { None } else { Some(nv) };
            }
        }
        scratch
            .into_iter()
            .enumerate()
            .filter_map(|(k, x)| x.filter(|x| !x.is_zero()).map(|x| (k + start, x)))
            .collect()
    }

    /// Same as the dense path, with the working vector kept in an ordered map.
    fn reduce_sparse(&self, v: &SparseVec<F>, skip: Option<usize>, zero: F) -> SparseVec<F> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (i, x) in v {
            assert!(*i < self.ncols, "column {i} out of range");
            acc.insert(*i, x.clone());
        }
        let mut out = Vec::new();
        while let Some((c, x)) = acc.pop_first() {
            if x.is_zero() {
                continue;
            }
            match self.row_of_pivot[c] {
                Some(r) if Some(c) != skip => {
                    for (j, y) in &self.rows[r][1..] {
                        let slot = acc.entry(*j).or_insert_with(|| zero.clone());
                        *slot = slot.minus(&x.times(y));
                    }
                }
                _ => out.push((c, x)),
            }
        }
        out
    }

    /// Remainder of `v` modulo the current row space.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.reduce_inner(v, None)
    }

    /// Reduces many vectors against the same echelon in parallel; output order matches input.
    pub fn reduce_batch(&self, vs: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
        vs.par_iter().map(|v| self.reduce(v)).collect()
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds an already reduced vector as a new row. Returns `false` for zero.
    pub fn insert_reduced(&mut self, mut r: SparseVec<F>) -> bool {
        if r.is_empty() {
            return false;
        }
        let p = r[0].0;
        debug_assert!(self.row_of_pivot[p].is_none());
        let inv = r[0].1.inverse().expect("nonzero pivot");
        for (_, x) in r.iter_mut() {
            *x = x.times(&inv);
        }
        self.row_of_pivot[p] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    /// Inserts `v` if it is independent of the current rows.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let r = self.reduce(v);
        self.insert_reduced(r)
    }

    /// Reduced row echelon form: rows sorted by pivot, every pivot column cleared.
    pub fn into_rref(self) -> Echelon<F> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut out = Echelon::new(self.ncols);
        let mut reduced: Vec<SparseVec<F>> = vec![Vec::new(); self.rows.len()];
        // Largest pivot first: each row is reduced only against rows already in RREF.
        let mut done = Echelon::new(self.ncols);
        for &r in order.iter().rev() {
            let row = &self.rows[r];
            let p = row[0].0;
            let red = done.reduce_inner(row, Some(p));
            done.row_of_pivot[p] = Some(done.rows.len());
            done.rows.push(red.clone());
            reduced[r] = red;
        }
        for &r in &order {
            let row = std::mem::take(&mut reduced[r]);
            out.row_of_pivot[row[0].0] = Some(out.rows.len());
            out.rows.push(row);
        }
        out
    }
}

/// Rank of a list of row vectors.
pub fn rank<F: Field>(rows: &[SparseVec<F>], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of `{x : A x = 0}`, one vector per free column in ascending order,
/// with a one in that free column.
pub fn nullspace<F: Field>(rows: &[SparseVec<F>], ncols: usize, one: &F) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    nullspace_of(e, one)
}

pub fn nullspace_of<F: Field>(e: Echelon<F>, one: &F) -> Vec<SparseVec<F>> {
    let e = e.into_rref();
    let ncols = e.ncols;
    let mut basis: Vec<SparseVec<F>> = Vec::new();
    let mut free_index = vec![usize::MAX; ncols];
    for c in 0..ncols {
        if e.row_of_pivot[c].is_none() {
            free_index[c] = basis.len();
            basis.push(vec![(c, one.clone())]);
        }
    }
    for row in &e.rows {
        let p = row[0].0;
        for (j, x) in &row[1..] {
            let b = free_index[*j];
            debug_assert!(b != usize::MAX);
            basis[b].push((p, x.negate()));
        }
    }
    for b in basis.iter_mut() {
        b.sort_by_key(|t| t.0);
    }
    basis
}

/// One solution of `A x = b` (free variables set to zero), or `None` if inconsistent.
pub fn solve<F: Field>(rows: &[SparseVec<F>], b: &[F], ncols: usize) -> Option<Vec<F>> {
    assert_eq!(rows.len(), b.len());
    let zero = b.first().map(|x| x.zero_like())?;
    let mut e = Echelon::new(ncols + 1);
    for (r, rhs) in rows.iter().zip(b) {
        let mut v = r.clone();
        if !rhs.is_zero() {
            v.push((ncols, rhs.clone()));
        }
        e.insert(&v);
    }
    let e = e.into_rref();
    if e.row_of_pivot[ncols].is_some() {
        return None;
    }
    let mut x = vec![zero; ncols];
    for row in &e.rows {
        if let Some((c, v)) = row.last() {
            if *c == ncols {
                x[row[0].0] = v.clone();
            }
        }
    }
    Some(x)
}

/// Coordinates of vectors with respect to a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct Coordinates<F: Field> {
    dim: usize,
    k: usize,
    ech: Echelon<F>,
}

impl<F: Field> Coordinates<F> {
    /// Fails if the family is dependent.
    pub fn new(basis: &[SparseVec<F>], dim: usize, one: &F) -> Result<Self, ScalarError> {
        let k = basis.len();
        let mut ech = Echelon::new(dim + k);
        for (i, b) in basis.iter().enumerate() {
            let mut v = b.clone();
            v.push((dim + i, one.clone()));
            let r = ech.reduce(&v);
            if r.first().map_or(true, |t| t.0 >= dim) {
                return Err(ScalarError::NotExact(format!("basis vector {i} is dependent")));
            }
            ech.insert_reduced(r);
        }
        Ok(Coordinates { dim, k, ech })
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    /// `Some(c)` with `v = sum c_i basis_i`, or `None` if `v` is outside the span.
    pub fn express(&self, v: &SparseVec<F>, zero: &F) -> Option<Vec<F>> {
        let r = self.ech.reduce(v);
        if r.first().is_some_and(|t| t.0 < self.dim) {
            return None;
        }
        let mut c = vec![zero.clone(); self.k];
        for (j, x) in r {
            c[j - self.dim] = x.negate();
        }
        Some(c)
    }
}

/// Rank over `Q(q)` of a dense Laurent matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut a: Vec<Vec<LaurentPoly>>) -> Result<usize, ScalarError> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut prev = LaurentPoly::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| ScalarError::NotExact("Bareiss step".into()))?;
            }
            a[i][c] = LaurentPoly::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    Ok(r)
}
