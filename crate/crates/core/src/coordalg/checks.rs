use super::{
    bideterminant, column_strict_fillings, dq, oehms_functional, schur_basis, CoordError, Functional,
};
use crate::combin::{all_multi_indices, lambda_n, mys_tableaux, MultiIndex, Partition};
use crate::evaluation::{dispatch, EvalError, EvalPlan, FieldJob};
use crate::report::{Check, VerificationReport};
use crate::scalars::linalg::{rank, sparse_from_dense};
use crate::scalars::{Evaluation, Field, LaurentPoly};
use crate::tensorspace::{beta, gamma, gamma_prime, SparseMatrix};
use rayon::prelude::*;

impl From<EvalError> for CoordError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Scalar(s) => CoordError::Scalar(s),
            other => CoordError::Centralizer(other.into()),
        }
    }
}

/// Sizes found by the Oehms basis check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OehmsOutcome {
    pub functionals: usize,
    pub expected: usize,
    pub schur_dim: usize,
    pub rank: usize,
}

impl OehmsOutcome {
    fn full(&self) -> bool {
        self.rank == self.functionals && self.functionals == self.schur_dim
    }
}

struct OehmsJob {
    m: usize,
    n: usize,
}

impl FieldJob for OehmsJob {
    type Output = OehmsOutcome;
    type Error = CoordError;
    fn run<F: Field, E: Evaluation<F>>(&self, ev: &E) -> Result<OehmsOutcome, CoordError> {
        let (m, n) = (self.m, self.n);
        let basis = schur_basis(m, n, ev)?;
        let mut labels = Vec::new();
        for (lam, l) in lambda_n(m, n) {
            let idx = mys_tableaux(&lam, m);
            for i in &idx {
                for j in &idx {
                    labels.push((lam.clone(), l, i.clone(), j.clone()));
                }
            }
        }
        let expected = lambda_n(m, n).iter().map(|(l, _)| mys_tableaux(l, m).len().pow(2)).sum();
        let zero = ev.zero();
        let rows: Vec<Vec<F>> = labels
            .par_iter()
            .map(|(lam, l, i, j)| {
                let f = oehms_functional(lam, *l, i, j)?.evaluate(ev)?;
                basis.iter().map(|b| f.pair(b, &zero)).collect::<Result<Vec<F>, CoordError>>()
            })
            .collect::<Result<_, _>>()?;
        let sparse: Vec<_> = rows.iter().map(|r| sparse_from_dense(r)).collect();
        Ok(OehmsOutcome { functionals: labels.len(), expected, schur_dim: basis.len(), rank: rank(&sparse, basis.len()) })
    }
}

/// The functionals `d_q^l T_q^lambda(i : j)` over `Lambda_n` and `I_lambda^mys`
/// evaluated on a basis of the Schur algebra: a square matrix of full rank.
pub fn oehms_rank_check(m: usize, n: usize, plan: &EvalPlan) -> Result<(VerificationReport, bool), CoordError> {
    let out = dispatch(&OehmsJob { m, n }, plan, OehmsOutcome::full)?;
    let o = out.output;
    let mut rep = VerificationReport::new(m, n, plan.mode.as_str()).param("functionals", o.functionals).param("schur_dim", o.schur_dim);
    rep.evaluation = out.evaluation;
    rep.push(Check::equal("functional count = sum |I_lambda|^2", o.expected, o.functionals));
    rep.push(Check::equal("functional count = schur algebra dim", o.schur_dim, o.functionals));
    rep.push(Check::equal("evaluation matrix rank", o.functionals, o.rank));
    Ok((rep, out.exhausted))
}

/// First `(i, j, basis element)` at which `mu wr x_{i,j} - x_{i,j} wr mu` does not vanish.
fn annihilation_witness<F: Field, E: Evaluation<F>>(
    mu: &SparseMatrix<LaurentPoly>,
    basis: &[SparseMatrix<F>],
    m: usize,
    ev: &E,
) -> Result<Option<String>, CoordError> {
    let zero = ev.zero();
    let idx = all_multi_indices(m, 2);
    for i in &idx {
        for j in &idx {
            let x = Functional::coordinate(i, j)?;
            let r = x.wreath_left(mu)?.sub(&x.wreath_right(mu)?)?.evaluate(ev)?;
            for (k, b) in basis.iter().enumerate() {
                if !r.pair(b, &zero)?.is_zero() {
                    return Ok(Some(format!("i=({i}) j=({j}) basis element {k}")));
                }
            }
        }
    }
    Ok(None)
}

struct FrtJob {
    m: usize,
}

impl FieldJob for FrtJob {
    type Output = Vec<Check>;
    type Error = CoordError;
    fn run<F: Field, E: Evaluation<F>>(&self, ev: &E) -> Result<Vec<Check>, CoordError> {
        let m = self.m;
        let basis = schur_basis(m, 2, ev)?;
        let mut out = Vec::new();
        for (name, mu) in [("beta relations", beta(m)), ("gamma relations", gamma(m))] {
            let w = annihilation_witness(&mu, &basis, m, ev)?;
            out.push(Check::holds(format!("{name} annihilate schur algebra m={m}"), w.is_none(), w));
        }
        let control = annihilation_witness(&gamma_prime(m), &basis, m, ev)?;
        out.push(Check::holds(
            format!("gamma' relations detected as not annihilating m={m}"),
            control.is_some(),
            Some("gamma' relations vanished on every basis element".into()),
        ));
        out.extend(dq_checks_in(m, &basis, ev)?);
        Ok(out)
    }
}

/// Both relation families vanish on the degree-2 Schur algebra, the `gamma'`
/// control does not, and `d_q` is well defined and group-like.
pub fn frt_annihilation_check(m: usize, plan: &EvalPlan) -> Result<(VerificationReport, bool), CoordError> {
    let out = dispatch(&FrtJob { m }, plan, |cs: &Vec<Check>| cs.iter().all(Check::passed))?;
    let mut rep = VerificationReport::new(m, 2, plan.mode.as_str());
    rep.evaluation = out.evaluation;
    rep.extend(out.output);
    Ok((rep, out.exhausted))
}

fn dq_checks_in<F: Field, E: Evaluation<F>>(m: usize, basis: &[SparseMatrix<F>], ev: &E) -> Result<Vec<Check>, CoordError> {
    let zero = ev.zero();
    let d = 2 * m;
    let fs: Vec<Functional<F>> = (1..=d)
        .flat_map(|k| (1..=d).map(move |l| (k, l)))
        .map(|(k, l)| dq(m, k, l).evaluate(ev))
        .collect::<Result<_, _>>()?;
    let mut indep = None;
    'outer: for (t, b) in basis.iter().enumerate() {
        let v0 = fs[0].pair(b, &zero)?;
        for (s, f) in fs.iter().enumerate().skip(1) {
            if f.pair(b, &zero)? != v0 {
                indep = Some(format!("basis element {t}, (k,l) #{s}"));
                break 'outer;
            }
        }
    }
    let d11 = &fs[0];
    let vals: Vec<F> = basis.iter().map(|b| d11.pair(b, &zero)).collect::<Result<_, _>>()?;
    let mut group = None;
    'g: for (a, fa) in basis.iter().enumerate() {
        for (b, fb) in basis.iter().enumerate() {
            if d11.pair(&fa.mul(fb), &zero)? != vals[a].times(&vals[b]) {
                group = Some(format!("basis elements {a}, {b}"));
                break 'g;
            }
        }
    }
    Ok(vec![
        Check::holds(format!("d_q independent of (k,l) m={m}"), indep.is_none(), indep),
        Check::holds(format!("d_q group-like m={m}"), group.is_none(), group),
    ])
}

/// `d_q` checks on the degree-2 Schur algebra in a given field.
pub fn dq_checks<F: Field, E: Evaluation<F>>(m: usize, ev: &E) -> Result<Vec<Check>, CoordError> {
    let basis = schur_basis(m, 2, ev)?;
    dq_checks_in(m, &basis, ev)
}

/// `<T(i,j), f g> = sum_{h in I_lambda^<} <T(i,h), f> <T(h,j), g>` for all `f, g`
/// in a basis of the Schur algebra of degree `|lambda|`.
pub fn comult_factorization_check<F: Field, E: Evaluation<F>>(
    lambda: &Partition,
    i: &MultiIndex,
    j: &MultiIndex,
    ev: &E,
) -> Result<Check, CoordError> {
    let m = i.m();
    let n = lambda.size();
    let name = format!("comultiplication lambda={lambda} i=({i}) j=({j})");
    let basis = schur_basis(m, n, ev)?;
    let zero = ev.zero();
    let hs = column_strict_fillings(lambda, m);
    let tij = bideterminant(lambda, i, j)?.evaluate(ev)?;
    let left: Vec<Functional<F>> = hs.iter().map(|h| Ok(bideterminant(lambda, i, h)?.evaluate(ev)?)).collect::<Result<_, CoordError>>()?;
    let right: Vec<Functional<F>> = hs.iter().map(|h| Ok(bideterminant(lambda, h, j)?.evaluate(ev)?)).collect::<Result<_, CoordError>>()?;
    let lv: Vec<Vec<F>> = basis.iter().map(|f| left.iter().map(|t| t.pair(f, &zero)).collect()).collect::<Result<_, _>>()?;
    let rv: Vec<Vec<F>> = basis.iter().map(|g| right.iter().map(|t| t.pair(g, &zero)).collect()).collect::<Result<_, _>>()?;
    for (a, f) in basis.iter().enumerate() {
        for (b, g) in basis.iter().enumerate() {
            let lhs = tij.pair(&f.mul(g), &zero)?;
            let rhs = lv[a].iter().zip(&rv[b]).fold(zero.clone(), |acc, (x, y)| acc.plus(&x.times(y)));
            if lhs != rhs {
                return Ok(Check::holds(name, false, Some(format!("basis elements f={a} g={b}"))));
            }
        }
    }
    Ok(Check::holds(name, true, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::i_lambda;
    use crate::scalars::{ExactField, Mode};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn oehms_small() {
        for (m, n, want) in [(1, 2, 10), (1, 3, 20)] {
            let (r, _) = oehms_rank_check(m, n, &EvalPlan::new(Mode::Exact, 0, None, m, n)).unwrap();
            assert!(r.passed(), "{}", r.to_text());
            assert_eq!(r.params["functionals"], want);
        }
    }

    #[test]
    fn frt_relations() {
        for m in 1..=2 {
            let (r, _) = frt_annihilation_check(m, &EvalPlan::new(Mode::Exact, 0, None, m, 2)).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn comultiplication() {
        let ev = ExactField;
        for (lam, m, i, j) in [
            (p(&[1]), 1, vec![1], vec![2]),
            (p(&[2]), 1, vec![1, 1], vec![1, 1]),
        ] {
            let c = comult_factorization_check(&lam, &MultiIndex::new(m, i).unwrap(), &MultiIndex::new(m, j).unwrap(), &ev).unwrap();
            assert!(c.passed(), "{c:?}");
        }
        let lam = p(&[1, 1]);
        let il = i_lambda(&lam, 2);
        let c = comult_factorization_check(&lam, &il, &il, &ev).unwrap();
        assert!(c.passed(), "{c:?}");
    }
}
