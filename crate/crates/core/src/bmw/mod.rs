//! Words in the BMW generators, the Enyang basis labels and the matrix
//! representation `T_i -> beta'_i`, `E_i -> gamma'_i`.

mod structure;

pub use structure::{structure_constants, StructureTable};

use crate::combin::{all_permutations, coset_reps_d_nu, word_string, CombinError, Permutation};
use crate::report::{Check, VerificationReport};
use crate::scalars::{bmw_x, Evaluation, LaurentMode, LaurentPoly, Mode, RationalPoint, Ring, ScalarError};
use crate::tensorspace::{beta_prime, embed_at, gamma_prime, residual_witness, SparseMatrix};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BmwError {
    #[error("letter {letter} is outside 1..{n}")]
    Letter { letter: Letter, n: usize },
    #[error("bad label {0:?}")]
    Label(String),
    #[error(transparent)]
    Combin(#[from] CombinError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("basis matrices are dependent: {0}")]
    Dependent(String),
    #[error("coefficient is not a Laurent polynomial: {0}")]
    NotLaurent(String),
    #[error("{0}")]
    Guard(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    T(usize),
    E(usize),
}

impl Letter {
    pub fn index(self) -> usize {
        match self {
            Letter::T(i) | Letter::E(i) => i,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::T(i) => write!(f, "T{i}"),
            Letter::E(i) => write!(f, "E{i}"),
        }
    }
}

/// A word over `T_i, E_i` for `1 <= i < n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BmwWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BmwWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self, BmwError> {
        if let Some(&l) = letters.iter().find(|l| l.index() == 0 || l.index() >= n) {
            return Err(BmwError::Letter { letter: l, n });
        }
        Ok(BmwWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BmwWord { n, letters: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// The image under the anti-involution fixing every generator.
    pub fn reversed(&self) -> Self {
        BmwWord { n: self.n, letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn concat(&self, o: &BmwWord) -> Self {
        assert_eq!(self.n, o.n);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        BmwWord { n: self.n, letters }
    }
}

impl fmt::Display for BmwWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A label `(f, d1, sigma, d2)` of the basis element `T_{d1}^* E_1 E_3 ... E_{2f-1} T_sigma T_{d2}`.
/// `sigma` is stored as a permutation of `{1..n}` fixing `1..2f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnyangIndex {
    pub f: usize,
    pub d1: Permutation,
    pub sigma: Permutation,
    pub d2: Permutation,
}

impl EnyangIndex {
    pub fn n(&self) -> usize {
        self.d1.n()
    }

    /// Parses the text form, e.g. `f=1; d1=[s2,s1]; sigma=[]; d2=[s2]`.
    pub fn parse(s: &str, n: usize) -> Result<Self, BmwError> {
        let bad = || BmwError::Label(s.to_string());
        let mut f = None;
        let mut words: [Option<Vec<usize>>; 3] = [None, None, None];
        for part in s.split(';') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v = v.trim();
            match k.trim() {
                "f" => f = Some(v.parse::<usize>().map_err(|_| bad())?),
                key @ ("d1" | "sigma" | "d2") => {
                    let inner = v.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
                    let w = inner
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| t.strip_prefix('s').and_then(|d| d.parse::<usize>().ok()).ok_or_else(bad))
                        .collect::<Result<Vec<_>, _>>()?;
                    let slot = ["d1", "sigma", "d2"].iter().position(|x| *x == key).unwrap();
                    words[slot] = Some(w);
                }
                _ => return Err(bad()),
            }
        }
        let f = f.ok_or_else(bad)?;
        let [Some(w1), Some(ws), Some(w2)] = words else { return Err(bad()) };
        let idx = EnyangIndex {
            f,
            d1: Permutation::from_word(&w1, n)?,
            sigma: Permutation::from_word(&ws, n)?,
            d2: Permutation::from_word(&w2, n)?,
        };
        if 2 * f > n
            || !crate::combin::in_d_nu(&idx.d1, f)
            || !crate::combin::in_d_nu(&idx.d2, f)
            || (1..=2 * f).any(|a| idx.sigma.apply(a) != a)
        {
            return Err(bad());
        }
        Ok(idx)
    }
}

impl fmt::Display for EnyangIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f={}; d1={}; sigma={}; d2={}",
            self.f,
            word_string(&self.d1.reduced_word()),
            word_string(&self.sigma.reduced_word()),
            word_string(&self.d2.reduced_word())
        )
    }
}

/// All `(2n-1)!!` labels: `f` ascending, then `d1`, `sigma`, `d2`.
pub fn enyang_indices(n: usize) -> Vec<EnyangIndex> {
    let mut out = Vec::new();
    for f in 0..=n / 2 {
        let ds = coset_reps_d_nu(f, n);
        let sigmas: Vec<Permutation> = all_permutations(n - 2 * f)
            .into_iter()
            .map(|s| {
                let mut img: Vec<usize> = (1..=2 * f).collect();
                img.extend(s.images().iter().map(|&a| a + 2 * f));
                Permutation::new(img).expect("shifted bijection")
            })
            .collect();
        for d1 in &ds {
            for s in &sigmas {
                for d2 in &ds {
                    out.push(EnyangIndex { f, d1: d1.clone(), sigma: s.clone(), d2: d2.clone() });
                }
            }
        }
    }
    out
}

pub fn enyang_word(idx: &EnyangIndex) -> BmwWord {
    let mut letters: Vec<Letter> = idx.d1.reduced_word().into_iter().rev().map(Letter::T).collect();
    letters.extend((1..=idx.f).map(|k| Letter::E(2 * k - 1)));
    letters.extend(idx.sigma.reduced_word().into_iter().map(Letter::T));
    letters.extend(idx.d2.reduced_word().into_iter().map(Letter::T));
    BmwWord { n: idx.n(), letters }
}

/// The generator images on `V^{(x) n}` over some coefficient ring.
#[derive(Clone, Debug)]
pub struct BmwRep<T: Ring> {
    pub m: usize,
    pub n: usize,
    t: Vec<SparseMatrix<T>>,
    e: Vec<SparseMatrix<T>>,
    id: SparseMatrix<T>,
}

impl BmwRep<LaurentPoly> {
    pub fn laurent(m: usize, n: usize) -> Self {
        Self::evaluated(m, n, &LaurentMode).expect("identity evaluation")
    }
}

impl<T: Ring> BmwRep<T> {
    pub fn evaluated<E: Evaluation<T>>(m: usize, n: usize, ev: &E) -> Result<Self, ScalarError> {
        let bp = beta_prime(m).evaluate(ev)?;
        let gp = gamma_prime(m).evaluate(ev)?;
        let place = |x: &SparseMatrix<T>| -> Vec<SparseMatrix<T>> {
            (1..n).map(|k| embed_at(x, k, n, m).expect("valid position")).collect()
        };
        Ok(BmwRep { m, n, t: place(&bp), e: place(&gp), id: SparseMatrix::identity((2 * m).pow(n as u32), ev.one()) })
    }

    /// Replaces the generator images, e.g. to build a negative control.
    pub fn from_parts(m: usize, n: usize, t: Vec<SparseMatrix<T>>, e: Vec<SparseMatrix<T>>, id: SparseMatrix<T>) -> Self {
        BmwRep { m, n, t, e, id }
    }

    pub fn t(&self, i: usize) -> &SparseMatrix<T> {
        &self.t[i - 1]
    }

    pub fn e(&self, i: usize) -> &SparseMatrix<T> {
        &self.e[i - 1]
    }

    pub fn identity(&self) -> &SparseMatrix<T> {
        &self.id
    }

    pub fn generators(&self) -> Vec<SparseMatrix<T>> {
        self.t.iter().chain(&self.e).cloned().collect()
    }

    fn letter(&self, l: Letter) -> &SparseMatrix<T> {
        match l {
            Letter::T(i) => self.t(i),
            Letter::E(i) => self.e(i),
        }
    }

    /// Product of the letter images in word order.
    pub fn represent(&self, w: &BmwWord) -> SparseMatrix<T> {
        assert_eq!(w.n(), self.n);
        let mut it = w.letters().iter();
        match it.next() {
            None => self.id.clone(),
            Some(&l) => it.fold(self.letter(l).clone(), |acc, &x| acc.mul(self.letter(x))),
        }
    }
}

pub fn represent(w: &BmwWord, m: usize) -> SparseMatrix<LaurentPoly> {
    BmwRep::laurent(m, w.n()).represent(w)
}

/// The parameters `r`, `r^-1`, `z`, `x` in the coefficient ring.
#[derive(Clone, Debug)]
pub struct BmwParams<T> {
    pub r: T,
    pub r_inv: T,
    pub z: T,
    pub x: T,
}

impl BmwParams<LaurentPoly> {
    /// `r = -q^(2m+1)`, `z = q - q^-1`, `x = bmw_x(m)`.
    pub fn specialized(m: usize) -> Self {
        let e = 2 * m as i32 + 1;
        BmwParams {
            r: LaurentPoly::monomial(-1, e),
            r_inv: LaurentPoly::monomial(-1, -e),
            z: LaurentPoly::from_int_terms(&[(1, 1), (-1, -1)]),
            x: bmw_x(m),
        }
    }
}

impl BmwParams<LaurentPoly> {
    pub fn evaluate<T: Ring, E: Evaluation<T>>(&self, ev: &E) -> Result<BmwParams<T>, ScalarError> {
        Ok(BmwParams { r: ev.apply(&self.r)?, r_inv: ev.apply(&self.r_inv)?, z: ev.apply(&self.z)?, x: ev.apply(&self.x)? })
    }
}

/// Residual matrices of the defining relations, grouped by family.
/// Each family lists `(instance, residual)`.
pub fn relation_residuals<T: Ring>(rep: &BmwRep<T>, p: &BmwParams<T>) -> Vec<(&'static str, Vec<(String, SparseMatrix<T>)>)> {
    let n = rep.n;
    let id = rep.identity();
    let (t, e) = (|i| rep.t(i), |i| rep.e(i));
    let mut fam: Vec<(&'static str, Vec<(String, SparseMatrix<T>)>)> = Vec::new();
    let mut push = |name: &'static str, inst: String, res: SparseMatrix<T>| {
        if let Some(f) = fam.iter_mut().find(|f| f.0 == name) {
            f.1.push((inst, res));
        } else {
            fam.push((name, vec![(inst, res)]));
        }
    };
    for i in 1..n {
        let skein = t(i).mul(&t(i).sub(&id.sub(e(i)).scale(&p.z))).sub(id);
        push("skein", format!("i={i}"), skein);
        let sq = t(i).mul(t(i)).sub(id).sub(&t(i).sub(&t(i).mul(e(i))).scale(&p.z));
        push("skein squared", format!("i={i}"), sq);
        push("loop", format!("i={i}"), e(i).mul(e(i)).sub(&e(i).scale(&p.x)));
        push("kink", format!("E{i}T{i}"), e(i).mul(t(i)).sub(&e(i).scale(&p.r_inv)));
        push("kink", format!("T{i}E{i}"), t(i).mul(e(i)).sub(&e(i).scale(&p.r_inv)));
        for j in 1..n {
            if i.abs_diff(j) >= 2 && i < j {
                push("far commute", format!("T{i}T{j}"), t(i).mul(t(j)).sub(&t(j).mul(t(i))));
                push("far commute", format!("T{i}E{j}"), t(i).mul(e(j)).sub(&e(j).mul(t(i))));
                push("far commute", format!("E{i}T{j}"), e(i).mul(t(j)).sub(&t(j).mul(e(i))));
                push("far commute", format!("E{i}E{j}"), e(i).mul(e(j)).sub(&e(j).mul(e(i))));
            }
            if i.abs_diff(j) == 1 {
                push("tangle", format!("E{i}E{j}E{i}"), e(i).mul(e(j)).mul(e(i)).sub(e(i)));
                push("twist", format!("E{i}T{j}E{i}"), e(i).mul(t(j)).mul(e(i)).sub(&e(i).scale(&p.r)));
            }
        }
        if i + 1 < n {
            let j = i + 1;
            push("braid", format!("i={i}"), t(i).mul(t(j)).mul(t(i)).sub(&t(j).mul(t(i)).mul(t(j))));
            push("slide", format!("T{i}T{j}E{i}"), t(i).mul(t(j)).mul(e(i)).sub(&e(j).mul(e(i))));
            push("slide", format!("T{j}T{i}E{j}"), t(j).mul(t(i)).mul(e(j)).sub(&e(i).mul(e(j))));
        }
    }
    fam
}

/// One check per relation family; the witness names the instance and entry.
pub fn relation_checks<T: Ring>(rep: &BmwRep<T>, p: &BmwParams<T>, suffix: &str) -> Vec<Check> {
    relation_residuals(rep, p)
        .into_iter()
        .map(|(name, insts)| {
            let bad = insts
                .iter()
                .find(|(_, r)| !r.is_zero())
                .map(|(inst, r)| format!("{inst} {}", residual_witness(r).unwrap_or_default()));
            Check::holds(format!("{name}{suffix}"), bad.is_none(), bad)
        })
        .collect()
}

/// Every defining relation over `Z[q, q^-1]`, and again after `q -> 1`.
pub fn relation_suite(m: usize, n: usize) -> Result<VerificationReport, BmwError> {
    if n < 2 {
        return Err(BmwError::Guard(format!("relations need n >= 2, got {n}")));
    }
    let mut rep = VerificationReport::new(m, n, Mode::Laurent.as_str());
    let p = BmwParams::specialized(m);
    rep.extend(relation_checks(&BmwRep::laurent(m, n), &p, ""));
    let one = RationalPoint::integer(1);
    let brauer = BmwRep::evaluated(m, n, &one)?;
    rep.extend(relation_checks(&brauer, &p.evaluate(&one)?, " at q=1"));
    Ok(rep)
}

/// `phi(w)^T = phi(w reversed)` for every Enyang word and the generators.
pub fn star_symmetry_check(m: usize, n: usize) -> Vec<Check> {
    let rep = BmwRep::laurent(m, n);
    let mut out = Vec::new();
    let gens = (1..n).flat_map(|i| [rep.t(i), rep.e(i)]).position(|g| !g.is_symmetric());
    out.push(Check::holds("generator images symmetric", gens.is_none(), gens.map(|k| format!("generator #{k}"))));
    let bad = enyang_indices(n).into_iter().find(|idx| {
        let w = enyang_word(idx);
        rep.represent(&w).transpose() != rep.represent(&w.reversed())
    });
    out.push(Check::holds(
        "transpose equals reversed word",
        bad.is_none(),
        bad.map(|idx| idx.to_string()),
    ));
    out
}

/// Rank of the Enyang basis images, flattened to vectors, after evaluation.
pub fn faithfulness_rank<F, E>(m: usize, n: usize, ev: &E) -> Result<usize, BmwError>
where
    F: crate::scalars::Field,
    E: Evaluation<F>,
{
    let rep = BmwRep::evaluated(m, n, ev)?;
    let d = (2 * m).pow(n as u32);
    let mut ech = crate::scalars::linalg::Echelon::new(d * d);
    for idx in enyang_indices(n) {
        ech.insert(&rep.represent(&enyang_word(&idx)).to_vec());
    }
    Ok(ech.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::{d_j_word, double_factorial_odd};
    use crate::scalars::{ExactField, ModpEval};

    #[test]
    fn label_counts() {
        for n in 1..=5 {
            assert_eq!(enyang_indices(n).len() as u128, double_factorial_odd(n), "n={n}");
        }
        let l = enyang_indices(1);
        assert!(enyang_word(&l[0]).letters().is_empty());
    }

    #[test]
    fn labels_are_ordered_and_distinct() {
        let l = enyang_indices(4);
        let mut s = l.clone();
        s.dedup();
        assert_eq!(s.len(), l.len());
        assert!(l.windows(2).all(|w| w[0].f <= w[1].f));
    }

    #[test]
    fn word_shapes() {
        let l = enyang_indices(2);
        let w: Vec<String> = l.iter().map(|i| enyang_word(i).to_string()).collect();
        assert_eq!(w, vec!["1", "T1", "E1"]);
        // n=3, f=1: the label with d2 sending {1,2} to {1,3}
        let (_, word) = (0, d_j_word(&[1, 3], 3).unwrap());
        assert_eq!(word, vec![2]);
        let idx = enyang_indices(3)
            .into_iter()
            .find(|i| i.f == 1 && i.d1.is_identity() && i.d2.reduced_word() == word)
            .unwrap();
        assert_eq!(enyang_word(&idx).letters(), &[Letter::E(1), Letter::T(2)]);
        // Length additivity of the assembled word.
        for idx in enyang_indices(4) {
            let len = idx.d1.length() + idx.f + idx.sigma.length() + idx.d2.length();
            assert_eq!(enyang_word(&idx).letters().len(), len);
        }
    }

    #[test]
    fn label_text_round_trip() {
        for n in 2..=4 {
            for idx in enyang_indices(n) {
                let s = idx.to_string();
                assert_eq!(EnyangIndex::parse(&s, n).unwrap(), idx, "{s}");
            }
        }
        let idx = EnyangIndex::parse("f=1; d1=[s2,s1]; sigma=[]; d2=[s2]", 3).unwrap();
        assert_eq!(idx.to_string(), "f=1; d1=[s2,s1]; sigma=[]; d2=[s2]");
        assert!(EnyangIndex::parse("f=1; d1=[s1]; sigma=[]; d2=[]", 3).is_err());
        assert!(EnyangIndex::parse("f=1; d1=[]", 3).is_err());
    }

    #[test]
    fn representation_basics() {
        let id = represent(&BmwWord::identity(2), 1);
        assert_eq!(id, SparseMatrix::laurent_identity(4));
        assert_eq!(represent(&BmwWord::new(2, vec![Letter::E(1)]).unwrap(), 1), gamma_prime(1));
        // T^2 - 1 = z (T - T E)
        let t = represent(&BmwWord::new(2, vec![Letter::T(1)]).unwrap(), 1);
        let tt = represent(&BmwWord::new(2, vec![Letter::T(1), Letter::T(1)]).unwrap(), 1);
        let te = represent(&BmwWord::new(2, vec![Letter::T(1), Letter::E(1)]).unwrap(), 1);
        let z = LaurentPoly::from_int_terms(&[(1, 1), (-1, -1)]);
        assert_eq!(tt.sub(&id), t.sub(&te).scale(&z));
        assert!(BmwWord::new(2, vec![Letter::T(2)]).is_err());
    }

    #[test]
    fn relations_hold() {
        for (m, n) in [(1, 2), (2, 2), (1, 3)] {
            let r = relation_suite(m, n).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
        assert!(relation_suite(1, 1).is_err());
    }

    /// `gamma'` with the sign factors `eps_i eps_j` dropped.
    fn unsigned_gamma_prime(m: usize) -> SparseMatrix<LaurentPoly> {
        use crate::combin::prime;
        use crate::tensorspace::RhoEps;
        let d = 2 * m;
        let re = RhoEps::new(m);
        let mut t = Vec::new();
        for i in 1..=d {
            for j in 1..=d {
                let row = (i - 1) * d + prime(m, i) - 1;
                let col = (prime(m, j) - 1) * d + j - 1;
                t.push((row, col, LaurentPoly::monomial(1, re.rho(j) - re.rho(i))));
            }
        }
        SparseMatrix::from_triplets(d * d, t)
    }

    #[test]
    fn sign_flipped_gamma_breaks_kink() {
        let (m, n) = (1, 3);
        let base = BmwRep::laurent(m, n);
        let g = unsigned_gamma_prime(m);
        let e: Vec<_> = (1..n).map(|i| embed_at(&g, i, n, m).unwrap()).collect();
        let t: Vec<_> = (1..n).map(|i| base.t(i).clone()).collect();
        let bad = BmwRep::from_parts(m, n, t, e, base.identity().clone());
        let checks = relation_checks(&bad, &BmwParams::specialized(m), "");
        let kink = checks.iter().find(|c| c.name == "kink").unwrap();
        assert!(!kink.passed());
        assert!(kink.witness.as_ref().unwrap().contains("entry"));
        // An overall sign is invisible to the kink relation but not to the loop relation.
        let neg: Vec<_> = (1..n).map(|i| base.e(i).scale(&LaurentPoly::constant(-1))).collect();
        let t: Vec<_> = (1..n).map(|i| base.t(i).clone()).collect();
        let flipped = BmwRep::from_parts(m, n, t, neg, base.identity().clone());
        let checks = relation_checks(&flipped, &BmwParams::specialized(m), "");
        assert!(checks.iter().find(|c| c.name == "kink").unwrap().passed());
        assert!(!checks.iter().find(|c| c.name == "loop").unwrap().passed());
    }

    #[test]
    fn braid_word_independence() {
        let rep = BmwRep::laurent(2, 3);
        let a = rep.represent(&BmwWord::new(3, vec![Letter::T(1), Letter::T(2), Letter::T(1)]).unwrap());
        let b = rep.represent(&BmwWord::new(3, vec![Letter::T(2), Letter::T(1), Letter::T(2)]).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn star_symmetry() {
        for (m, n) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
            for c in star_symmetry_check(m, n) {
                assert!(c.passed(), "{c:?}");
            }
        }
    }

    #[test]
    fn faithfulness_small() {
        assert_eq!(faithfulness_rank(2, 2, &ExactField).unwrap(), 3);
        assert_eq!(faithfulness_rank(1, 2, &ExactField).unwrap(), 2);
        let ev = ModpEval::random(7, 0, 64);
        assert_eq!(faithfulness_rank(2, 2, &ev).unwrap(), 3);
    }
}
