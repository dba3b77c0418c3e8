//! Spans of matrix algebras, commutants, and the duality reports comparing
//! the images of the quantum group and of the BMW algebra.

use crate::bmw::{enyang_indices, BmwRep};
use crate::combin::{all_multi_indices, coset_reps_d_nu, double_factorial_odd, lambda_n, mys_tableaux, partitions_bounded, std_count, weyl_dim_sp, wt};
use crate::evaluation::{dispatch, EvalError, EvalPlan, FieldJob};
use crate::qaction::{tensor_generator, Generator, QActionError};
use crate::report::{Check, VerificationReport};
use crate::scalars::linalg::{nullspace_of, Echelon, SparseVec};
use crate::scalars::{Evaluation, Field, LaurentPoly, Mode, ScalarError};
use crate::tensorspace::{residual_witness, SparseMatrix};
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

/// Largest matrix size accepted for commutants over `Q(q)`.
pub const EXACT_DIM_LIMIT: usize = 64;
/// Largest matrix size accepted for commutants over a prime field.
pub const MODP_DIM_LIMIT: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CentralizerError {
    #[error("dimension {d} exceeds the {mode} limit {limit}")]
    Guard { d: usize, mode: Mode, limit: usize },
    #[error("generators have different sizes")]
    Shape,
    #[error("rank must be at least 1: {0}")]
    Rank(String),
    #[error("generator is not weight homogeneous: {0}")]
    Inhomogeneous(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    QAction(#[from] QActionError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Refuses commutants that are too large for the chosen mode.
pub fn guard(d: usize, mode: Mode) -> Result<(), CentralizerError> {
    let limit = match mode {
        Mode::Modp => MODP_DIM_LIMIT,
        _ => EXACT_DIM_LIMIT,
    };
    if d > limit {
        Err(CentralizerError::Guard { d, mode, limit })
    } else {
        Ok(())
    }
}

/// A linearly independent family of `d x d` matrices, flattened row-major.
#[derive(Clone, Debug)]
pub struct AlgebraSpan<F: Field> {
    pub d: usize,
    pub basis: Vec<SparseVec<F>>,
    echelon: Echelon<F>,
}

impl<F: Field> AlgebraSpan<F> {
    pub fn from_vectors(d: usize, vs: impl IntoIterator<Item = SparseVec<F>>) -> Self {
        let mut echelon = Echelon::new(d * d);
        let mut basis = Vec::new();
        for v in vs {
            if echelon.insert(&v) {
                basis.push(v);
            }
        }
        AlgebraSpan { d, basis, echelon }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, m: &SparseMatrix<F>) -> bool {
        self.echelon.contains(&m.to_vec())
    }

    /// Both spans are the same subspace.
    pub fn same_span(&self, o: &AlgebraSpan<F>) -> bool {
        if self.dim() != o.dim() {
            return false;
        }
        let mut e = self.echelon.clone();
        o.basis.iter().all(|v| !e.insert(v))
    }

    pub fn matrices(&self) -> Vec<SparseMatrix<F>> {
        self.basis.iter().map(|v| SparseMatrix::from_vec(self.d, v)).collect()
    }
}

fn check_shapes<F: Field>(gens: &[SparseMatrix<F>], d: usize) -> Result<(), CentralizerError> {
    if gens.iter().any(|g| g.dim() != d) {
        Err(CentralizerError::Shape)
    } else {
        Ok(())
    }
}

/// The unital algebra generated by `gens`: words are grown by right
/// multiplication, keeping each product that enlarges the span.
pub fn algebra_closure<F: Field>(gens: &[SparseMatrix<F>], d: usize, one: &F) -> Result<AlgebraSpan<F>, CentralizerError> {
    check_shapes(gens, d)?;
    let id = SparseMatrix::identity(d, one.clone());
    let mut span = AlgebraSpan::from_vectors(d, [id.to_vec()]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let candidates: Vec<SparseMatrix<F>> = frontier
            .par_iter()
            .flat_map_iter(|x| gens.iter().map(move |g| x.mul(g)))
            .collect();
        let reduced = span.echelon.reduce_batch(&candidates.iter().map(|c| c.to_vec()).collect::<Vec<_>>());
        frontier = Vec::new();
        for (c, r) in candidates.into_iter().zip(reduced) {
            if r.is_empty() {
                continue;
            }
            let r = span.echelon.reduce(&r);
            if span.echelon.insert_reduced(r) {
                span.basis.push(c.to_vec());
                frontier.push(c);
            }
        }
    }
    Ok(span)
}

/// `{X : X G = G X for every generator}`, solved in the `d^2` entries of `X`.
pub fn commutant<F: Field>(gens: &[SparseMatrix<F>], d: usize, one: &F, mode: Mode) -> Result<AlgebraSpan<F>, CentralizerError> {
    guard(d, mode)?;
    check_shapes(gens, d)?;
    let mut e = Echelon::new(d * d);
    for g in gens {
        let gt = g.transpose();
        let rows: Vec<SparseVec<F>> = (0..d * d)
            .into_par_iter()
            .map(|ij| {
                let (i, j) = (ij / d, ij % d);
                // (XG)_ij = sum_k X_ik G_kj ; (GX)_ij = sum_k G_ik X_kj
                let mut row: Vec<(usize, F)> = gt.row(j).iter().map(|(k, v)| (i * d + k, v.clone())).collect();
                row.extend(g.row(i).iter().map(|(k, v)| (k * d + j, v.negate())));
                row.sort_by_key(|t| t.0);
                let mut merged: Vec<(usize, F)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv = lv.plus(&v),
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                merged
            })
            .filter(|r| !r.is_empty())
            .collect();
        for r in rows {
            e.insert(&r);
        }
    }
    Ok(AlgebraSpan::from_vectors(d, nullspace_of(e, one)))
}

/// The weight of every basis vector of `V^{(x) n}`, in basis order.
pub fn tensor_weights(m: usize, n: usize) -> Vec<Vec<i64>> {
    all_multi_indices(m, n).iter().map(wt).collect()
}

/// Weight shift of a matrix that maps every weight space into a single one;
/// `None` for the zero matrix.
fn degree_of<F: Field>(g: &SparseMatrix<F>, weights: &[Vec<i64>]) -> Result<Option<Vec<i64>>, CentralizerError> {
    let mut deg: Option<Vec<i64>> = None;
    for (r, c, _) in g.entries() {
        let nu: Vec<i64> = weights[r].iter().zip(&weights[c]).map(|(a, b)| a - b).collect();
        match &deg {
            None => deg = Some(nu),
            Some(d) if *d == nu => {}
            Some(_) => return Err(CentralizerError::Inhomogeneous(format!("entry ({r},{c})"))),
        }
    }
    Ok(deg)
}

/// [`commutant`] for generators that shift weights homogeneously. Entries of
/// `X` are split by `wt(row) - wt(col)` and each piece is solved on its own.
pub fn graded_commutant<F: Field>(
    gens: &[SparseMatrix<F>],
    weights: &[Vec<i64>],
    one: &F,
    mode: Mode,
) -> Result<AlgebraSpan<F>, CentralizerError> {
    let d = weights.len();
    guard(d, mode)?;
    check_shapes(gens, d)?;
    let mut blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for a in 0..d {
        for b in 0..d {
            let nu: Vec<i64> = weights[a].iter().zip(&weights[b]).map(|(x, y)| x - y).collect();
            blocks.entry(nu).or_default().push(a * d + b);
        }
    }
    let mut local = vec![0usize; d * d];
    for cells in blocks.values() {
        for (k, &ab) in cells.iter().enumerate() {
            local[ab] = k;
        }
    }
    let graded: Vec<(Vec<i64>, &SparseMatrix<F>, SparseMatrix<F>)> = gens
        .iter()
        .filter_map(|g| degree_of(g, weights).transpose().map(|r| r.map(|deg| (deg, g, g.transpose()))))
        .collect::<Result<_, _>>()?;
    let pieces: Vec<Vec<SparseVec<F>>> = blocks
        .par_iter()
        .map(|(nu, cells)| {
            let mut e = Echelon::new(cells.len());
            for (deg, g, gt) in &graded {
                let target: Vec<i64> = nu.iter().zip(deg).map(|(a, b)| a + b).collect();
                let Some(tcells) = blocks.get(&target) else { continue };
                for &ij in tcells {
                    let (i, j) = (ij / d, ij % d);
                    // (XG)_ij = sum_k X_ik G_kj ; (GX)_ij = sum_k G_ik X_kj
                    let mut row: Vec<(usize, F)> = gt.row(j).iter().map(|(k, v)| (local[i * d + k], v.clone())).collect();
                    row.extend(g.row(i).iter().map(|(k, v)| (local[k * d + j], v.negate())));
                    row.sort_by_key(|t| t.0);
                    let mut merged: Vec<(usize, F)> = Vec::with_capacity(row.len());
                    for (c, v) in row {
                        match merged.last_mut() {
                            Some((lc, lv)) if *lc == c => *lv = lv.plus(&v),
                            _ => merged.push((c, v)),
                        }
                    }
                    merged.retain(|(_, v)| !v.is_zero());
                    if !merged.is_empty() {
                        e.insert(&merged);
                    }
                }
            }
            nullspace_of(e, one)
                .into_iter()
                .map(|v| v.into_iter().map(|(k, x)| (cells[k], x)).collect())
                .collect()
        })
        .collect();
    Ok(AlgebraSpan::from_vectors(d, pieces.into_iter().flatten()))
}

/// `E_i, F_i, K_i, K_i^-1` on `V^{(x) n}`, over `Z[q, q^-1]`.
pub fn psi_generators(m: usize, n: usize) -> Result<Vec<SparseMatrix<LaurentPoly>>, CentralizerError> {
    Ok(Generator::all(m).into_iter().map(|g| tensor_generator(g, m, n)).collect::<Result<_, _>>()?)
}

/// `beta'_i, gamma'_i` on `V^{(x) n}`, over `Z[q, q^-1]`.
pub fn phi_generators(m: usize, n: usize) -> Vec<SparseMatrix<LaurentPoly>> {
    BmwRep::laurent(m, n).generators()
}

fn evaluate_all<F: Field, E: Evaluation<F>>(ms: &[SparseMatrix<LaurentPoly>], ev: &E) -> Result<Vec<SparseMatrix<F>>, ScalarError> {
    ms.iter().map(|x| x.evaluate(ev)).collect()
}

pub fn psi_image<F: Field, E: Evaluation<F>>(m: usize, n: usize, ev: &E) -> Result<AlgebraSpan<F>, CentralizerError> {
    let gens = evaluate_all(&psi_generators(m, n)?, ev)?;
    algebra_closure(&gens, (2 * m).pow(n as u32), &ev.one())
}

pub fn phi_image<F: Field, E: Evaluation<F>>(m: usize, n: usize, ev: &E) -> Result<AlgebraSpan<F>, CentralizerError> {
    let gens = evaluate_all(&phi_generators(m, n), ev)?;
    algebra_closure(&gens, (2 * m).pow(n as u32), &ev.one())
}

/// `sum over Lambda_n of |I_lambda^mys|^2`.
pub fn expected_psi_dim(m: usize, n: usize) -> usize {
    lambda_n(m, n).iter().map(|(l, _)| mys_tableaux(l, m).len().pow(2)).sum()
}

/// Dimensions found by one run of the duality computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityDims {
    pub psi: usize,
    pub phi: usize,
    pub commutant_phi: usize,
    pub commutant_psi: usize,
    pub psi_is_commutant: bool,
    pub phi_is_commutant: bool,
}

impl DualityDims {
    fn consistent(&self) -> bool {
        self.psi_is_commutant && self.phi_is_commutant
    }
}

struct DualityJob {
    m: usize,
    n: usize,
}

impl FieldJob for DualityJob {
    type Output = DualityDims;
    type Error = CentralizerError;
    fn run<F: Field, E: Evaluation<F>>(&self, ev: &E) -> Result<DualityDims, CentralizerError> {
        let (m, n) = (self.m, self.n);
        let d = (2 * m).pow(n as u32);
        let one = ev.one();
        let psi_g = evaluate_all(&psi_generators(m, n)?, ev)?;
        let phi_g = evaluate_all(&phi_generators(m, n), ev)?;
        let psi = algebra_closure(&psi_g, d, &one)?;
        let phi = algebra_closure(&phi_g, d, &one)?;
        let w = tensor_weights(m, n);
        let c_phi = graded_commutant(&phi_g, &w, &one, ev.mode())?;
        let c_psi = graded_commutant(&psi_g, &w, &one, ev.mode())?;
        Ok(DualityDims {
            psi: psi.dim(),
            phi: phi.dim(),
            commutant_phi: c_phi.dim(),
            commutant_psi: c_psi.dim(),
            psi_is_commutant: psi.same_span(&c_phi),
            phi_is_commutant: phi.same_span(&c_psi),
        })
    }
}

/// Exact zero commutators between every quantum group generator and every BMW generator.
pub fn cross_commutation_check(m: usize, n: usize) -> Result<Check, CentralizerError> {
    let psi = psi_generators(m, n)?;
    let phi = phi_generators(m, n);
    let mut bad = None;
    'outer: for (a, x) in psi.iter().enumerate() {
        for (b, y) in phi.iter().enumerate() {
            let r = x.mul(y).sub(&y.mul(x));
            if !r.is_zero() {
                bad = Some(format!("psi generator {a}, phi generator {b}: {}", residual_witness(&r).unwrap_or_default()));
                break 'outer;
            }
        }
    }
    Ok(Check::holds("generators commute", bad.is_none(), bad))
}

/// The duality checks at one `(m, n)`. `exhausted` is set when every prime point disagreed.
pub fn duality_report(m: usize, n: usize, plan: &EvalPlan) -> Result<(VerificationReport, bool), CentralizerError> {
    let d = (2 * m).pow(n as u32);
    guard(d, plan.mode)?;
    let out = dispatch(&DualityJob { m, n }, plan, DualityDims::consistent)?;
    let dims = out.output;
    let mut rep = VerificationReport::new(m, n, plan.mode.as_str());
    rep.evaluation = out.evaluation;
    rep = rep
        .param("dim_psi_image", dims.psi)
        .param("dim_phi_image", dims.phi)
        .param("dim_commutant_bmw", dims.commutant_phi)
        .param("dim_commutant_u", dims.commutant_psi);
    rep.push(cross_commutation_check(m, n)?);
    rep.push(Check::equal("psi image dim = commutant of bmw dim", dims.commutant_phi, dims.psi));
    rep.push(Check::holds("psi image = commutant of bmw", dims.psi_is_commutant, Some(format!("dims {} and {}", dims.psi, dims.commutant_phi))));
    rep.push(Check::equal("phi image dim = commutant of u dim", dims.commutant_psi, dims.phi));
    rep.push(Check::holds("phi image = commutant of u", dims.phi_is_commutant, Some(format!("dims {} and {}", dims.phi, dims.commutant_psi))));
    if m >= n {
        rep.push(Check::equal("phi image dim = (2n-1)!!", double_factorial_odd(n) as usize, dims.phi));
    } else {
        rep.push(Check::skipped("phi image dim = (2n-1)!!", format!("m = {m} < n = {n}")));
    }
    rep.push(Check::equal("psi image dim = sum |I_lambda|^2", expected_psi_dim(m, n), dims.psi));
    rep.push(Check::holds("dims within d^2", dims.psi <= d * d && dims.phi <= d * d, None));
    Ok((rep, out.exhausted))
}

/// `(2m)^n = sum_f sum_{lambda |- n-2f} dim L(lambda) |D_{nu_f}| #std(lambda^t)`.
///
/// The identity is asserted for `m >= n`. Below that both sides are still
/// computed; agreement passes, disagreement is recorded as skipped.
pub fn bimodule_dimension_check(m: usize, n: usize) -> Result<Check, CentralizerError> {
    if m == 0 {
        return Err(CentralizerError::Rank(format!("m = {m}")));
    }
    let lhs = (2 * m as u128).pow(n as u32);
    let mut rhs: u128 = 0;
    let mut terms = Vec::new();
    for f in 0..=n / 2 {
        let dn = coset_reps_d_nu(f, n).len() as u128;
        for l in partitions_bounded(n - 2 * f, m) {
            let t = weyl_dim_sp(&l, m) * dn * std_count(&l.transpose());
            terms.push(format!("{l}:{t}"));
            rhs += t;
        }
    }
    let name = format!("bimodule dimension m={m} n={n}");
    if m < n && lhs != rhs {
        return Ok(Check::skipped(name, format!("m = {m} < n = {n}; sides {lhs} and {rhs} differ outside the hypothesis")));
    }
    Ok(Check::equal(name, lhs, rhs).with_witness(terms.join(" + ")))
}

/// `commutant(commutant(phi generators))` has the dimension of the phi image.
pub fn double_commutant_dim<F: Field, E: Evaluation<F>>(m: usize, n: usize, ev: &E) -> Result<usize, CentralizerError> {
    let d = (2 * m).pow(n as u32);
    let one = ev.one();
    let phi_g = evaluate_all(&phi_generators(m, n), ev)?;
    let w = tensor_weights(m, n);
    let c = graded_commutant(&phi_g, &w, &one, ev.mode())?;
    debug_assert_eq!(c.d, d);
    Ok(graded_commutant(&c.matrices(), &w, &one, ev.mode())?.dim())
}

/// Labels counted for the faithfulness check.
pub fn enyang_count(n: usize) -> usize {
    enyang_indices(n).len()
}
