use crate::scalars::linalg::SparseVec;
use crate::scalars::{Evaluation, LaurentPoly, Ring, ScalarError};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;

/// A square sparse matrix stored by rows; each row is sorted by column and
/// holds no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T: Ring> {
    dim: usize,
    rows: Vec<Vec<(usize, T)>>,
}

/// Accumulates a sparse row in a dense scratch buffer.
struct RowAcc<T: Ring> {
    vals: Vec<Option<T>>,
    touched: Vec<usize>,
}

impl<T: Ring> RowAcc<T> {
    fn new(dim: usize) -> Self {
        RowAcc { vals: vec![None; dim], touched: Vec::new() }
    }

    fn add(&mut self, c: usize, x: T) {
        match &mut self.vals[c] {
            Some(v) => *v = v.plus(&x),
            slot @ None => {
                *slot = Some(x);
                self.touched.push(c);
            }
        }
    }

    fn drain(&mut self) -> Vec<(usize, T)> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &c in &self.touched {
            if let Some(v) = self.vals[c].take() {
                if !v.is_zero() {
                    out.push((c, v));
                }
            }
        }
        self.touched.clear();
        out
    }
}

impl<T: Ring> SparseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix { dim, rows: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize, one: T) -> Self {
        SparseMatrix { dim, rows: (0..dim).map(|i| vec![(i, one.clone())]).collect() }
    }

    /// Sums duplicate positions and drops zeros.
    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, T)>>(dim: usize, it: I) -> Self {
        let mut by_row: Vec<Vec<(usize, T)>> = vec![Vec::new(); dim];
        for (r, c, x) in it {
            assert!(r < dim && c < dim, "entry ({r},{c}) outside dimension {dim}");
            by_row[r].push((c, x));
        }
        let mut acc = RowAcc::new(dim);
        let rows = by_row
            .into_iter()
            .map(|row| {
                for (c, x) in row {
                    acc.add(c, x);
                }
                acc.drain()
            })
            .collect();
        SparseMatrix { dim, rows }
    }

    /// Diagonal matrix; zero entries are skipped.
    pub fn diagonal(diag: Vec<T>) -> Self {
        let dim = diag.len();
        SparseMatrix {
            dim,
            rows: diag
                .into_iter()
                .enumerate()
                .map(|(i, x)| if x.is_zero() { Vec::new() } else { vec![(i, x)] })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |t| t.0).ok().map(|k| &row[k].1)
    }

    /// All nonzero entries in `(row, col)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, *c, x)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, T)> {
        self.entries().next().map(|(r, c, x)| (r, c, x.clone()))
    }

    fn zip_with(&self, o: &Self, neg: bool) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                        out.push(a[i].clone());
                        i += 1;
                    } else if i >= a.len() || b[j].0 < a[i].0 {
                        let v = if neg { b[j].1.negate() } else { b[j].1.clone() };
                        out.push((b[j].0, v));
                        j += 1;
                    } else {
                        let v = if neg { a[i].1.minus(&b[j].1) } else { a[i].1.plus(&b[j].1) };
                        if !v.is_zero() {
                            out.push((a[i].0, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                out
            })
            .collect();
        SparseMatrix { dim: self.dim, rows }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_with(o, true)
    }

    pub fn scale(&self, k: &T) -> Self {
        if k.is_zero() {
            return Self::zeros(self.dim);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, x)| (*c, x.times(k)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        SparseMatrix { dim: self.dim, rows }
    }

    /// Matrix product `self * o`, rows computed in parallel.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let rows = self
            .rows
            .par_iter()
            .map_init(
                || RowAcc::new(self.dim),
                |acc, row| {
                    for (k, a) in row {
                        for (j, b) in &o.rows[*k] {
                            acc.add(*j, a.times(b));
                        }
                    }
                    acc.drain()
                },
            )
            .collect();
        SparseMatrix { dim: self.dim, rows }
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.dim];
        for (r, c, x) in self.entries() {
            rows[c].push((r, x.clone()));
        }
        SparseMatrix { dim: self.dim, rows }
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries().all(|(r, c, x)| self.get(c, r) == Some(x))
    }

    /// Kronecker product; the index of `(a, b)` is `a * o.dim + b`.
    pub fn kron(&self, o: &Self) -> Self {
        let d = self.dim * o.dim;
        let mut rows = Vec::with_capacity(d);
        for ra in &self.rows {
            for rb in &o.rows {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ca, x) in ra {
                    for (cb, y) in rb {
                        let v = x.times(y);
                        if !v.is_zero() {
                            row.push((ca * o.dim + cb, v));
                        }
                    }
                }
                rows.push(row);
            }
        }
        SparseMatrix { dim: d, rows }
    }

    /// Entrywise image under a ring map.
    pub fn try_map<U: Ring, F>(&self, f: F) -> Result<SparseMatrix<U>, ScalarError>
    where
        F: Fn(&T) -> Result<U, ScalarError> + Sync,
    {
        let rows = self
            .rows
            .par_iter()
            .map(|r| {
                let mut out = Vec::with_capacity(r.len());
                for (c, x) in r {
                    let v = f(x)?;
                    if !v.is_zero() {
                        out.push((*c, v));
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, ScalarError>>()?;
        Ok(SparseMatrix { dim: self.dim, rows })
    }

    /// The row vector `v * self`.
    pub fn apply_row(&self, v: &[(usize, T)]) -> Vec<(usize, T)> {
        let mut acc = RowAcc::new(self.dim);
        for (r, a) in v {
            for (c, b) in &self.rows[*r] {
                acc.add(*c, a.times(b));
            }
        }
        acc.drain()
    }

    /// The column vector `self * v`.
    pub fn apply_col(&self, v: &[(usize, T)]) -> Vec<(usize, T)> {
        let mut dense: Vec<Option<&T>> = vec![None; self.dim];
        for (i, x) in v {
            dense[*i] = Some(x);
        }
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let mut s: Option<T> = None;
                for (c, a) in row {
                    if let Some(x) = dense[*c] {
                        let t = a.times(x);
                        s = Some(match s {
                            Some(v) => v.plus(&t),
                            None => t,
                        });
                    }
                }
                s.filter(|x| !x.is_zero()).map(|x| (r, x))
            })
            .collect()
    }

    /// Row-major flattening to a vector of length `dim^2`.
    pub fn to_vec(&self) -> SparseVec<T> {
        self.entries().map(|(r, c, x)| (r * self.dim + c, x.clone())).collect()
    }

    pub fn from_vec(dim: usize, v: &SparseVec<T>) -> Self {
        Self::from_triplets(dim, v.iter().map(|(k, x)| (k / dim, k % dim, x.clone())))
    }

    /// The principal block on the given (sorted) index list.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.dim];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let rows = idx
            .iter()
            .map(|&r| {
                self.rows[r]
                    .iter()
                    .filter(|(c, _)| pos[*c] != usize::MAX)
                    .map(|(c, x)| (pos[*c], x.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { dim: idx.len(), rows }
    }
}

impl SparseMatrix<LaurentPoly> {
    pub fn laurent_identity(dim: usize) -> Self {
        Self::identity(dim, LaurentPoly::one())
    }

    /// Evaluates every entry into the target domain.
    pub fn evaluate<U: Ring, E: Evaluation<U>>(&self, ev: &E) -> Result<SparseMatrix<U>, ScalarError> {
        self.try_map(|x| ev.apply(x))
    }

    /// Entrywise bar involution.
    pub fn bar(&self) -> Self {
        self.try_map(|x| Ok(x.bar())).expect("bar is total")
    }
}

#[derive(Serialize)]
struct DumpLine<'a, T> {
    row: usize,
    col: usize,
    scalar: &'a T,
}

impl<T: Ring + Serialize> SparseMatrix<T> {
    /// One JSON object per nonzero entry, sorted by `(row, col)`.
    pub fn dump_jsonl(&self) -> String {
        let mut s = String::new();
        for (row, col, scalar) in self.entries() {
            let line = serde_json::to_string(&DumpLine { row, col, scalar }).expect("serializable");
            let _ = writeln!(s, "{line}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: i64, e: i32) -> LaurentPoly {
        LaurentPoly::monomial(c, e)
    }

    #[test]
    fn product_and_kron() {
        let a = SparseMatrix::from_triplets(2, vec![(0, 1, lp(1, 1)), (1, 0, lp(1, 0))]);
        let id = SparseMatrix::laurent_identity(2);
        assert_eq!(a.mul(&id), a);
        let a2 = a.mul(&a);
        assert_eq!(a2, SparseMatrix::diagonal(vec![lp(1, 1), lp(1, 1)]));
        let k = a.kron(&id);
        assert_eq!(k.dim(), 4);
        assert_eq!(k.get(0, 2), Some(&lp(1, 1)));
        assert_eq!(k.get(1, 3), Some(&lp(1, 1)));
        assert_eq!(k.nnz(), 4);
    }

    #[test]
    fn duplicate_triplets_cancel() {
        let a = SparseMatrix::from_triplets(2, vec![(0, 0, lp(1, 0)), (0, 0, lp(-1, 0))]);
        assert!(a.is_zero());
        assert_eq!(a.nnz(), 0);
    }

    #[test]
    fn row_and_column_application() {
        let a = SparseMatrix::from_triplets(2, vec![(0, 1, lp(2, 0)), (1, 1, lp(3, 0))]);
        assert_eq!(a.apply_row(&[(0, lp(1, 0))]), vec![(1, lp(2, 0))]);
        assert_eq!(a.apply_col(&[(1, lp(1, 0))]), vec![(0, lp(2, 0)), (1, lp(3, 0))]);
        assert_eq!(a.transpose().get(1, 0), Some(&lp(2, 0)));
    }

    #[test]
    fn dump_is_sorted_json_lines() {
        let a = SparseMatrix::from_triplets(2, vec![(1, 0, lp(1, 0)), (0, 1, lp(-1, 1))]);
        let d = a.dump_jsonl();
        let lines: Vec<&str> = d.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with(r#"{"row":0,"col":1,"#));
        assert!(lines[1].starts_with(r#"{"row":1,"col":0,"#));
    }
}
