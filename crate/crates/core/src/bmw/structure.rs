use super::{enyang_indices, enyang_word, BmwError, BmwRep};
use crate::scalars::linalg::{Coordinates, Echelon};
use crate::scalars::{Evaluation, ExactField, LaurentPoly, ModpEval, RatFunc};
use crate::tensorspace::SparseMatrix;
use rayon::prelude::*;
use serde::Serialize;

/// Multiplication table of the Enyang basis: `table[a][b][k]` is the
/// coefficient of basis element `k` in `b_a b_b`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureTable {
    pub n: usize,
    pub m: usize,
    pub labels: Vec<String>,
    pub table: Vec<Vec<Vec<LaurentPoly>>>,
}

impl StructureTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Product of two elements given in basis coordinates.
    pub fn multiply(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let k = self.len();
        let mut out = vec![LaurentPoly::zero(); k];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let s = xa * yb;
                for (c, t) in self.table[a][b].iter().enumerate() {
                    if !t.is_zero() {
                        out[c] = &out[c] + &(&s * t);
                    }
                }
            }
        }
        out
    }
}

fn restrict(v: &[(usize, LaurentPoly)], cols: &[usize]) -> Vec<(usize, RatFunc)> {
    let mut out = Vec::new();
    let mut it = v.iter().peekable();
    for (j, &c) in cols.iter().enumerate() {
        while it.peek().is_some_and(|(i, _)| *i < c) {
            it.next();
        }
        if let Some((i, x)) = it.peek() {
            if *i == c {
                out.push((j, RatFunc::from_laurent(x)));
            }
        }
    }
    out
}

/// Re-expands all products of Enyang basis elements in the basis, reading
/// coefficients off the `m = n` representation. Every coefficient must be a
/// Laurent polynomial, and each expansion is verified on the full matrices.
pub fn structure_constants(n: usize) -> Result<StructureTable, BmwError> {
    if n > 3 {
        return Err(BmwError::Guard(format!("exact structure constants are limited to n <= 3, got {n}")));
    }
    let m = n.max(1);
    let rep = BmwRep::laurent(m, n);
    let labels = enyang_indices(n);
    let mats: Vec<SparseMatrix<LaurentPoly>> = labels.par_iter().map(|l| rep.represent(&enyang_word(l))).collect();
    let vecs: Vec<_> = mats.iter().map(|x| x.to_vec()).collect();
    let d2 = mats[0].dim() * mats[0].dim();

    // Columns on which the basis stays independent, found at a prime point:
    // a nonzero minor there is nonzero over Q(q) as well.
    let ev = ModpEval::random(0x5eed, 0, 8 * (n as u64) * (m as u64 + 1));
    let mut ech = Echelon::new(d2);
    for v in &vecs {
        let fv: Vec<_> = v.iter().map(|(i, x)| Ok((*i, ev.apply(x)?))).collect::<Result<_, crate::scalars::ScalarError>>()?;
        if !ech.insert(&fv) {
            return Err(BmwError::Dependent(format!("basis images are dependent at n = {n}")));
        }
    }
    let cols = ech.pivots();
    let basis: Vec<_> = vecs.iter().map(|v| restrict(v, &cols)).collect();
    let coords = Coordinates::new(&basis, cols.len(), &ExactField.one())
        .map_err(|e| BmwError::Dependent(e.to_string()))?;

    let k = labels.len();
    let table = (0..k)
        .into_par_iter()
        .map(|a| {
            (0..k)
                .map(|b| {
                    let prod = mats[a].mul(&mats[b]);
                    let pv = prod.to_vec();
                    let c = coords
                        .express(&restrict(&pv, &cols), &RatFunc::zero())
                        .ok_or_else(|| BmwError::Dependent(format!("product {a}*{b} leaves the span")))?;
                    let c = c
                        .iter()
                        .map(|x| x.to_laurent().ok_or_else(|| BmwError::NotLaurent(format!("{a}*{b}: {x}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    let recombined = c
                        .iter()
                        .zip(&mats)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(SparseMatrix::zeros(prod.dim()), |acc, (x, mm)| acc.add(&mm.scale(x)));
                    if recombined != prod {
                        return Err(BmwError::Dependent(format!("product {a}*{b} is not reproduced")));
                    }
                    Ok(c)
                })
                .collect::<Result<Vec<_>, BmwError>>()
        })
        .collect::<Result<Vec<_>, BmwError>>()?;
    Ok(StructureTable { n, m, labels: labels.iter().map(|l| l.to_string()).collect(), table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bmw::BmwParams;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_two_table() {
        let t = structure_constants(2).unwrap();
        assert_eq!(t.labels.len(), 3);
        // basis order: 1, T1, E1
        let p = BmwParams::specialized(2);
        let zero = LaurentPoly::zero();
        let one = LaurentPoly::one();
        assert_eq!(t.table[2][2], vec![zero.clone(), zero.clone(), p.x.clone()]);
        assert_eq!(t.table[1][1], vec![one.clone(), p.z.clone(), -&(&p.z * &p.r_inv)]);
        assert_eq!(t.table[0][1], vec![zero.clone(), one.clone(), zero.clone()]);
        assert!(structure_constants(4).is_err());
    }

    #[test]
    fn associativity_n3() {
        let t = structure_constants(3).unwrap();
        let k = t.len();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mut pick = || {
                (0..k)
                    .map(|_| LaurentPoly::monomial(rng.gen_range(-2..=2), rng.gen_range(-2..=2)))
                    .collect::<Vec<_>>()
            };
            let (a, b, c) = (pick(), pick(), pick());
            assert_eq!(t.multiply(&t.multiply(&a, &b), &c), t.multiply(&a, &t.multiply(&b, &c)));
        }
    }
}
