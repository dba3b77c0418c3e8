//! Maps between tensor spaces of ranks `m < m0`: the index embedding
//! `v_i -> v_{i + m0 - m}`, the compression `theta0` of operators on the
//! big space, and the label-preserving map `theta1` on Enyang basis elements.

use crate::bmw::{enyang_indices, enyang_word, BmwRep, EnyangIndex};
use crate::centralizer::{commutant, psi_generators, CentralizerError};
use crate::combin::{all_multi_indices, MultiIndex};
use crate::evaluation::{dispatch, EvalError, EvalPlan, FieldJob};
use crate::report::{Check, VerificationReport};
use crate::scalars::{Evaluation, Field, LaurentPoly, Mode, Ring, ScalarError};
use crate::tensorspace::{residual_witness, SparseMatrix};
use rayon::prelude::*;
use thiserror::Error;

/// Largest big-space dimension accepted over `Q(q)`.
pub const EXACT_DIM_LIMIT: usize = 256;
/// Largest big-space dimension accepted over a prime field.
pub const MODP_DIM_LIMIT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TruncationError {
    #[error("need 1 <= m < m0 and n >= 1, got m={m} m0={m0} n={n}")]
    Rank { m: usize, m0: usize, n: usize },
    #[error("dimension {d} exceeds the {mode} limit {limit}")]
    Guard { d: usize, mode: Mode, limit: usize },
    #[error("operator has size {got}, expected {want}")]
    Dimension { got: usize, want: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Centralizer(#[from] CentralizerError),
}

/// Small rank `m`, large rank `m0`, degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankPair {
    pub m: usize,
    pub m0: usize,
    pub n: usize,
}

impl RankPair {
    pub fn new(m: usize, m0: usize, n: usize) -> Result<Self, TruncationError> {
        if m == 0 || m >= m0 || n == 0 {
            return Err(TruncationError::Rank { m, m0, n });
        }
        Ok(RankPair { m, m0, n })
    }

    pub fn small_dim(&self) -> usize {
        (2 * self.m).pow(self.n as u32)
    }

    pub fn big_dim(&self) -> usize {
        (2 * self.m0).pow(self.n as u32)
    }

    /// Exponent of `q` in the global scale of `theta0` and `theta1`.
    pub fn scale_exponent(&self) -> i32 {
        ((self.m + self.m0) * self.n) as i32
    }

    pub fn scale(&self) -> LaurentPoly {
        LaurentPoly::monomial(1, self.scale_exponent())
    }
}

/// The injection `v_i -> v_{i + m0 - m}` as a `2 m0 x 2 m` matrix of 0/1 entries.
pub fn iota(m: usize, m0: usize) -> Vec<Vec<i64>> {
    assert!(m < m0);
    let s = m0 - m;
    (0..2 * m0).map(|r| (0..2 * m).map(|c| i64::from(r == c + s)).collect()).collect()
}

/// The surjection back, `2 m x 2 m0`; it kills the basis vectors outside the image of `iota`.
pub fn pi(m: usize, m0: usize) -> Vec<Vec<i64>> {
    let i = iota(m, m0);
    (0..2 * m).map(|r| (0..2 * m0).map(|c| i[c][r]).collect()).collect()
}

fn scaled(a: &[Vec<i64>], e: i32) -> Vec<Vec<LaurentPoly>> {
    a.iter().map(|row| row.iter().map(|&x| LaurentPoly::monomial(x, e)).collect()).collect()
}

/// `q^m iota`.
pub fn iota_scaled(m: usize, m0: usize) -> Vec<Vec<LaurentPoly>> {
    scaled(&iota(m, m0), m as i32)
}

/// `q^m0 pi`.
pub fn pi_scaled(m: usize, m0: usize) -> Vec<Vec<LaurentPoly>> {
    scaled(&pi(m, m0), m0 as i32)
}

/// The image of a small multi-index in the big tensor space.
pub fn embed_index(i: &MultiIndex, m0: usize) -> MultiIndex {
    let s = m0 - i.m();
    MultiIndex::new(m0, i.entries().iter().map(|&e| e + s).collect()).expect("shifted entries stay in range")
}

/// Big-space basis positions hit by `iota^{(x) n}`, listed in small-space order
/// (the list is increasing).
pub fn embedded_positions(p: &RankPair) -> Vec<usize> {
    all_multi_indices(p.m, p.n).iter().map(|i| embed_index(i, p.m0).basis_index()).collect()
}

/// `pi~^{(x) n} f iota~^{(x) n}`, with the scale evaluated into the ring of `f`.
pub fn theta0<T: Ring, E: Evaluation<T>>(f: &SparseMatrix<T>, p: &RankPair, ev: &E) -> Result<SparseMatrix<T>, TruncationError> {
    if f.dim() != p.big_dim() {
        return Err(TruncationError::Dimension { got: f.dim(), want: p.big_dim() });
    }
    let k = ev.apply(&p.scale())?;
    Ok(f.restrict(&embedded_positions(p)).scale(&k))
}

/// The Enyang basis element with label `idx` goes to `q^{(m0+m)n}` times the like-labeled one.
pub fn theta1_on_basis(idx: &EnyangIndex, p: &RankPair) -> (LaurentPoly, EnyangIndex) {
    assert_eq!(idx.n(), p.n, "label has the wrong number of strands");
    (p.scale(), idx.clone())
}

fn guard(d: usize, mode: Mode) -> Result<(), TruncationError> {
    let limit = if mode == Mode::Modp { MODP_DIM_LIMIT } else { EXACT_DIM_LIMIT };
    if d > limit {
        return Err(TruncationError::Guard { d, mode, limit });
    }
    Ok(())
}

struct DiagramJob {
    pair: RankPair,
}

/// Per label: the text form and a witness when the two sides differ.
type LabelOutcomes = Vec<(String, Option<String>)>;

impl FieldJob for DiagramJob {
    type Output = LabelOutcomes;
    type Error = TruncationError;
    fn run<F: Field, E: Evaluation<F>>(&self, ev: &E) -> Result<LabelOutcomes, TruncationError> {
        let p = self.pair;
        let big = BmwRep::evaluated(p.m0, p.n, ev)?;
        let small = BmwRep::evaluated(p.m, p.n, ev)?;
        let k = ev.apply(&p.scale())?;
        enyang_indices(p.n)
            .par_iter()
            .map(|idx| {
                let w = enyang_word(idx);
                let lhs = theta0(&big.represent(&w), &p, ev)?;
                let rhs = small.represent(&w).scale(&k);
                let res = lhs.sub(&rhs);
                let wit = residual_witness(&res).map(|e| format!("{w}: {e}"));
                Ok((idx.to_string(), wit))
            })
            .collect()
    }
}

/// Checks `theta0(b~) = theta1(b)` on the image of every Enyang basis element.
/// The returned flag is set when every prime point was rejected.
pub fn diagram_check(p: &RankPair, plan: &EvalPlan) -> Result<(VerificationReport, bool), TruncationError> {
    guard(p.big_dim(), plan.mode)?;
    let out = dispatch(&DiagramJob { pair: *p }, plan, |_| true)?;
    let mut rep = VerificationReport::new(p.m, p.n, plan.mode.as_str())
        .param("m0", p.m0)
        .param("m0_at_least_n", p.m0 >= p.n)
        .param("scale_exponent", p.scale_exponent())
        .param("labels", out.output.len());
    rep.evaluation = out.evaluation;
    for (label, wit) in out.output {
        rep.push(Check::holds(format!("diagram commutes on {label}"), wit.is_none(), wit));
    }
    Ok((rep, out.exhausted))
}

/// `theta0` of the commutant of the big quantum group action commutes with
/// the small quantum group action. Exact, for small sizes.
pub fn commutant_compression_check(p: &RankPair) -> Result<Check, TruncationError> {
    guard(p.big_dim(), Mode::Exact)?;
    let ev = crate::scalars::ExactField;
    let one = ev.one();
    let big: Vec<_> = psi_generators(p.m0, p.n)?.iter().map(|g| g.evaluate(&ev)).collect::<Result<_, _>>()?;
    let small: Vec<_> = psi_generators(p.m, p.n)?.iter().map(|g| g.evaluate(&ev)).collect::<Result<_, _>>()?;
    let cent = commutant(&big, p.big_dim(), &one, Mode::Exact)?;
    let mut bad = None;
    'outer: for (a, x) in cent.matrices().iter().enumerate() {
        let t = theta0(x, p, &ev)?;
        for (b, g) in small.iter().enumerate() {
            if let Some(e) = residual_witness(&t.mul(g).sub(&g.mul(&t))) {
                bad = Some(format!("commutant element {a}, generator {b}: {e}"));
                break 'outer;
            }
        }
    }
    Ok(Check::holds(format!("theta0 maps the commutant into the small commutant ({} elements)", cent.dim()), bad.is_none(), bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bmw::represent;
    use crate::scalars::LaurentMode;
    use crate::tensorspace::{beta_prime, embed_at};

    type Dense = Vec<Vec<LaurentPoly>>;

    fn dense_mul(a: &Dense, b: &Dense) -> Dense {
        let z = LaurentPoly::zero();
        (0..a.len())
            .map(|i| {
                (0..b[0].len())
                    .map(|j| (0..b.len()).fold(z.clone(), |acc, k| acc.plus(&a[i][k].times(&b[k][j]))))
                    .collect()
            })
            .collect()
    }

    fn dense_kron(a: &Dense, b: &Dense) -> Dense {
        let (br, bc) = (b.len(), b[0].len());
        (0..a.len() * br)
            .map(|r| (0..a[0].len() * bc).map(|c| a[r / br][c / bc].times(&b[r % br][c % bc])).collect())
            .collect()
    }

    fn dense_of(f: &SparseMatrix<LaurentPoly>) -> Dense {
        let d = f.dim();
        (0..d).map(|r| (0..d).map(|c| f.get(r, c).cloned().unwrap_or_else(LaurentPoly::zero)).collect()).collect()
    }

    /// The composite with explicit rectangular tensor powers.
    fn oracle(f: &SparseMatrix<LaurentPoly>, p: &RankPair) -> Dense {
        let (mut pt, mut it) = (pi_scaled(p.m, p.m0), iota_scaled(p.m, p.m0));
        let (p1, i1) = (pt.clone(), it.clone());
        for _ in 1..p.n {
            pt = dense_kron(&pt, &p1);
            it = dense_kron(&it, &i1);
        }
        dense_mul(&dense_mul(&pt, &dense_of(f)), &it)
    }

    #[test]
    fn pi_iota_is_identity() {
        for (m, m0) in [(1, 2), (1, 3), (2, 3), (2, 5)] {
            let i = iota(m, m0);
            let p = pi(m, m0);
            assert_eq!(i.len(), 2 * m0);
            assert_eq!(p.len(), 2 * m);
            for r in 0..2 * m {
                for c in 0..2 * m {
                    let v: i64 = (0..2 * m0).map(|k| p[r][k] * i[k][c]).sum();
                    assert_eq!(v, i64::from(r == c));
                }
            }
            assert_eq!(i[m0 - m][0], 1);
        }
    }

    #[test]
    fn rank_pair_guards() {
        assert!(RankPair::new(2, 2, 2).is_err());
        assert!(RankPair::new(0, 2, 2).is_err());
        assert!(RankPair::new(1, 2, 0).is_err());
        assert_eq!(RankPair::new(1, 2, 2).unwrap().scale_exponent(), 6);
    }

    #[test]
    fn theta0_matches_rectangular_composite() {
        for (m, m0, n) in [(1, 2, 2), (1, 3, 1), (2, 3, 1)] {
            let p = RankPair::new(m, m0, n).unwrap();
            let rep = BmwRep::laurent(m0, n);
            let mut ops = vec![rep.identity().clone()];
            ops.extend(rep.generators());
            for f in ops {
                assert_eq!(dense_of(&theta0(&f, &p, &LaurentMode).unwrap()), oracle(&f, &p));
            }
        }
    }

    #[test]
    fn theta0_identity_and_beta() {
        let p = RankPair::new(1, 2, 2).unwrap();
        let id = SparseMatrix::laurent_identity(16);
        assert_eq!(theta0(&id, &p, &LaurentMode).unwrap(), SparseMatrix::laurent_identity(4).scale(&p.scale()));
        let big = embed_at(&beta_prime(2), 1, 2, 2).unwrap();
        let small = embed_at(&beta_prime(1), 1, 2, 1).unwrap();
        assert_eq!(theta0(&big, &p, &LaurentMode).unwrap(), small.scale(&LaurentPoly::monomial(1, 6)));
        assert!(theta0(&small, &p, &LaurentMode).is_err());
    }

    #[test]
    fn theta1_scale_matches_theta0() {
        let p = RankPair::new(1, 3, 2).unwrap();
        for idx in enyang_indices(2) {
            let (s, j) = theta1_on_basis(&idx, &p);
            assert_eq!(j, idx);
            assert_eq!(s, LaurentPoly::monomial(1, 8));
        }
        let id = SparseMatrix::laurent_identity(36);
        let t = theta0(&id, &p, &LaurentMode).unwrap();
        assert_eq!(t.get(0, 0), Some(&theta1_on_basis(&enyang_indices(2)[0], &p).0));
    }

    #[test]
    fn diagram_small_cases() {
        for (m, m0, n) in [(1, 2, 2), (1, 3, 2)] {
            let p = RankPair::new(m, m0, n).unwrap();
            let plan = EvalPlan::new(Mode::Exact, 0, None, m0, n);
            let (rep, ex) = diagram_check(&p, &plan).unwrap();
            assert!(!ex);
            assert_eq!(rep.checks.len(), 3);
            assert!(rep.passed(), "{}", rep.to_text());
            assert_eq!(rep.params["m0_at_least_n"], serde_json::json!(m0 >= n));
        }
    }

    #[test]
    fn diagram_laurent_n3() {
        // Direct Laurent comparison, independent of the field dispatch.
        let p = RankPair::new(1, 2, 3).unwrap();
        for idx in enyang_indices(3) {
            let w = enyang_word(&idx);
            let lhs = theta0(&represent(&w, 2), &p, &LaurentMode).unwrap();
            assert_eq!(lhs, represent(&w, 1).scale(&p.scale()), "{idx}");
        }
    }

    #[test]
    fn compressing_non_words_breaks_the_diagram() {
        // E1 E1 is x E1 with x depending on the rank, so it is not rank stable.
        let p = RankPair::new(1, 2, 2).unwrap();
        let e = BmwRep::laurent(2, 2).e(1).clone();
        let small = BmwRep::laurent(1, 2).e(1).clone();
        let lhs = theta0(&e.mul(&e), &p, &LaurentMode).unwrap();
        assert_ne!(lhs, small.mul(&small).scale(&p.scale()));
    }

    #[test]
    fn commutant_compression() {
        let c = commutant_compression_check(&RankPair::new(1, 2, 2).unwrap()).unwrap();
        assert!(c.passed(), "{c:?}");
    }

    #[test]
    fn guard_applies() {
        let p = RankPair::new(2, 3, 4).unwrap();
        let plan = EvalPlan::new(Mode::Exact, 0, None, 3, 4);
        assert!(matches!(diagram_check(&p, &plan), Err(TruncationError::Guard { .. })));
    }
}
