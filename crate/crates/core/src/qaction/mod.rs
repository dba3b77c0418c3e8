//! The quantum group side: generators of `U_q(sp_2m)` acting on `V^{(x) n}`,
//! divided powers, weight spaces and Lusztig's projectors.
//!
//! Generator matrices act on column vectors: entry `(r, c)` is the coefficient
//! of `v_r` in `g v_c`.

use crate::combin::{all_multi_indices, prime, wt, MultiIndex};
use crate::report::Check;
use crate::scalars::{quantum_factorial, quantum_integer, LaurentPoly, NodeKind};
use crate::tensorspace::{beta_prime, embed_at, gamma_prime, residual_witness, SparseMatrix};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QActionError {
    #[error("generator index {i} outside 1..={m}")]
    Index { i: usize, m: usize },
    #[error("integrality violation: {0}")]
    Integrality(String),
    #[error("weight {0} does not occur in the tensor space")]
    NoSuchWeight(Weight),
    #[error("bad weight text {0:?}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E(usize),
    F(usize),
    K(usize),
    Kinv(usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::E(i) | Generator::F(i) | Generator::K(i) | Generator::Kinv(i) => i,
        }
    }

    /// All `E_i, F_i, K_i, K_i^-1`.
    pub fn all(m: usize) -> Vec<Generator> {
        (1..=m)
            .flat_map(|i| [Generator::E(i), Generator::F(i), Generator::K(i), Generator::Kinv(i)])
            .collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "E{i}"),
            Generator::F(i) => write!(f, "F{i}"),
            Generator::K(i) => write!(f, "K{i}"),
            Generator::Kinv(i) => write!(f, "K{i}^-1"),
        }
    }
}

/// The long node is `m`.
pub fn node_kind(i: usize, m: usize) -> NodeKind {
    if i == m {
        NodeKind::Long
    } else {
        NodeKind::Short
    }
}

/// An integral weight `(mu_1, ..., mu_m)` in the `eps` basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn of(i: &MultiIndex) -> Self {
        Weight(wt(i))
    }

    /// `<mu, alpha_i^vee>`: `mu_i - mu_{i+1}` for `i < m`, `mu_m` for `i = m`.
    pub fn pairing(&self, i: usize) -> i64 {
        let m = self.0.len();
        if i == m {
            self.0[m - 1]
        } else {
            self.0[i - 1] - self.0[i]
        }
    }

    /// The simple root `alpha_i`.
    pub fn simple_root(i: usize, m: usize) -> Self {
        let mut v = vec![0; m];
        if i == m {
            v[m - 1] = 2;
        } else {
            v[i - 1] = 1;
            v[i] = -1;
        }
        Weight(v)
    }

    pub fn plus(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Weight {
    type Err = QActionError;
    fn from_str(s: &str) -> Result<Self, QActionError> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| QActionError::Parse(s.into()))?;
        inner
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| QActionError::Parse(s.into())))
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }
}

/// Cartan matrix `a_ij = <alpha_j, alpha_i^vee>`.
pub fn cartan_matrix(m: usize) -> Vec<Vec<i64>> {
    (1..=m)
        .map(|i| (1..=m).map(|j| Weight::simple_root(j, m).pairing(i)).collect())
        .collect()
}

fn check_index(g: Generator, m: usize) -> Result<(), QActionError> {
    let i = g.index();
    if i == 0 || i > m {
        Err(QActionError::Index { i, m })
    } else {
        Ok(())
    }
}

fn unit(d: usize, t: Vec<(usize, usize, i64, i32)>) -> SparseMatrix<LaurentPoly> {
    SparseMatrix::from_triplets(d, t.into_iter().map(|(r, c, k, e)| (r - 1, c - 1, LaurentPoly::monomial(k, e))))
}

/// The action of one generator on `V`.
pub fn generator_matrix(g: Generator, m: usize) -> Result<SparseMatrix<LaurentPoly>, QActionError> {
    check_index(g, m)?;
    let d = 2 * m;
    let p = |j| prime(m, j);
    Ok(match g {
        Generator::E(i) if i < m => unit(d, vec![(i, i + 1, 1, 0), (p(i + 1), p(i), -1, 0)]),
        Generator::E(i) => unit(d, vec![(i, p(i), 1, 0)]),
        Generator::F(i) if i < m => unit(d, vec![(i + 1, i, 1, 0), (p(i), p(i + 1), -1, 0)]),
        Generator::F(i) => unit(d, vec![(p(i), i, 1, 0)]),
        Generator::K(i) | Generator::Kinv(i) => {
            let s = if matches!(g, Generator::K(_)) { 1 } else { -1 };
            SparseMatrix::diagonal(
                (1..=d)
                    .map(|j| {
                        let e = if i < m {
                            if j == i || j == p(i + 1) {
                                1
                            } else if j == i + 1 || j == p(i) {
                                -1
                            } else {
                                0
                            }
                        } else if j == m {
                            1
                        } else if j == p(m) {
                            -1
                        } else {
                            0
                        };
                        LaurentPoly::monomial(1, s * e)
                    })
                    .collect(),
            )
        }
    })
}

/// `k~_i`, which is `k_i` on short nodes and `k_m^2` on the long node.
fn k_tilde(i: usize, m: usize, inverse: bool) -> SparseMatrix<LaurentPoly> {
    let k = generator_matrix(if inverse { Generator::Kinv(i) } else { Generator::K(i) }, m).expect("index checked");
    if i == m {
        k.mul(&k)
    } else {
        k
    }
}

fn kron_all(parts: &[&SparseMatrix<LaurentPoly>]) -> SparseMatrix<LaurentPoly> {
    let mut it = parts.iter();
    let first = (*it.next().expect("n >= 1")).clone();
    it.fold(first, |acc, x| acc.kron(x))
}

/// The coproduct-expanded action of `g` on `V^{(x) n}`.
pub fn tensor_generator(g: Generator, m: usize, n: usize) -> Result<SparseMatrix<LaurentPoly>, QActionError> {
    let g1 = generator_matrix(g, m)?;
    let id = SparseMatrix::laurent_identity(2 * m);
    let i = g.index();
    Ok(match g {
        Generator::K(_) | Generator::Kinv(_) => kron_all(&vec![&g1; n]),
        Generator::E(_) => {
            let kt = k_tilde(i, m, false);
            let mut acc = SparseMatrix::zeros((2 * m).pow(n as u32));
            for k in 0..n {
                let mut parts = vec![&kt; k];
                parts.push(&g1);
                parts.extend(std::iter::repeat(&id).take(n - k - 1));
                acc = acc.add(&kron_all(&parts));
            }
            acc
        }
        Generator::F(_) => {
            let kt = k_tilde(i, m, true);
            let mut acc = SparseMatrix::zeros((2 * m).pow(n as u32));
            for k in 0..n {
                let mut parts = vec![&id; k];
                parts.push(&g1);
                parts.extend(std::iter::repeat(&kt).take(n - k - 1));
                acc = acc.add(&kron_all(&parts));
            }
            acc
        }
    })
}

/// `x^a / [a]_i!` for `x = E_i` or `F_i`; inexact division is an error.
pub fn divided_power(g: Generator, a: usize, m: usize, n: usize) -> Result<SparseMatrix<LaurentPoly>, QActionError> {
    let x = tensor_generator(g, m, n)?;
    let mut pw = SparseMatrix::laurent_identity(x.dim());
    for _ in 0..a {
        pw = pw.mul(&x);
    }
    let fact = quantum_factorial(a as i64, node_kind(g.index(), m)).expect("a >= 0");
    let mut t = Vec::with_capacity(pw.nnz());
    for (r, c, v) in pw.entries() {
        let qv = v.div_exact(&fact).ok_or_else(|| {
            QActionError::Integrality(format!("{g}^({a}) entry ({r},{c}) = {v} not divisible by [{a}]!"))
        })?;
        t.push((r, c, qv));
    }
    Ok(SparseMatrix::from_triplets(pw.dim(), t))
}

/// Basis indices of `V^{(x) n}` grouped by weight, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub m: usize,
    pub n: usize,
    spaces: BTreeMap<Weight, Vec<usize>>,
}

impl WeightTable {
    pub fn new(m: usize, n: usize) -> Self {
        let mut spaces: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for i in all_multi_indices(m, n) {
            spaces.entry(Weight::of(&i)).or_default().push(i.basis_index());
        }
        for v in spaces.values_mut() {
            v.sort_unstable();
        }
        WeightTable { m, n, spaces }
    }

    /// The occurring weights `X_n`.
    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.spaces.keys()
    }

    pub fn space(&self, w: &Weight) -> Option<&[usize]> {
        self.spaces.get(w).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &[usize])> {
        self.spaces.iter().map(|(w, v)| (w, v.as_slice()))
    }

    /// The weight of each basis vector.
    pub fn weight_of_index(&self) -> Vec<&Weight> {
        let mut out = vec![None; (2 * self.m).pow(self.n as u32)];
        for (w, idx) in &self.spaces {
            for &k in idx {
                out[k] = Some(w);
            }
        }
        out.into_iter().map(|w| w.expect("partition")).collect()
    }
}

pub fn weight_table(m: usize, n: usize) -> WeightTable {
    WeightTable::new(m, n)
}

pub fn weight_projector(table: &WeightTable, w: &Weight) -> SparseMatrix<LaurentPoly> {
    let d = (2 * table.m).pow(table.n as u32);
    let idx = table.space(w).unwrap_or(&[]);
    SparseMatrix::from_triplets(d, idx.iter().map(|&k| (k, k, LaurentPoly::one())))
}

/// The scalar by which `[K_i; c, t]` acts on a vector with `<mu, alpha_i^vee> = h`.
pub fn bracket_scalar(node: NodeKind, h: i64, c: i64, t: usize) -> Result<LaurentPoly, QActionError> {
    let s = node.step();
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for j in 1..=t as i64 {
        let a = (h + c - j + 1) as i32;
        num = &num * &LaurentPoly::from_int_terms(&[(s * a, 1), (-s * a, -1)]);
        den = &den * &LaurentPoly::from_int_terms(&[(s * j as i32, 1), (-s * j as i32, -1)]);
    }
    num.div_exact(&den)
        .ok_or_else(|| QActionError::Integrality(format!("bracket h={h} c={c} t={t} is not Laurent")))
}

/// `[K_i; c, t]` as a diagonal operator on `V^{(x) n}`.
pub fn bracket_operator(
    table: &WeightTable,
    i: usize,
    c: i64,
    t: usize,
) -> Result<SparseMatrix<LaurentPoly>, QActionError> {
    let node = node_kind(i, table.m);
    let mut cache: HashMap<i64, LaurentPoly> = HashMap::new();
    let mut diag = Vec::new();
    for w in table.weight_of_index() {
        let h = w.pairing(i);
        if !cache.contains_key(&h) {
            cache.insert(h, bracket_scalar(node, h, c, t)?);
        }
        diag.push(cache[&h].clone());
    }
    Ok(SparseMatrix::diagonal(diag))
}

/// `psi(p'_lambda)`: the product over nodes of
/// `[K_i; -l_i - 1, R][K_i; -l_i + R, R]` with `l_i = <lambda, alpha_i^vee>`,
/// `R = 2n` on short nodes and `4n` on the long node.
pub fn lusztig_projector(table: &WeightTable, lambda: &Weight) -> Result<SparseMatrix<LaurentPoly>, QActionError> {
    if table.space(lambda).is_none() {
        return Err(QActionError::NoSuchWeight(lambda.clone()));
    }
    let m = table.m;
    let n = table.n;
    let mut acc = SparseMatrix::laurent_identity((2 * m).pow(n as u32));
    for i in 1..=m {
        let r = if i == m { 4 * n } else { 2 * n };
        let l = lambda.pairing(i);
        acc = acc.mul(&bracket_operator(table, i, -l - 1, r)?);
        acc = acc.mul(&bracket_operator(table, i, -l + r as i64, r)?);
    }
    Ok(acc)
}

/// `psi(p'_lambda) = p_lambda` for every occurring weight.
pub fn projector_checks(m: usize, n: usize) -> Result<Vec<Check>, QActionError> {
    let table = weight_table(m, n);
    let mut out = Vec::new();
    for w in table.weights() {
        let name = format!("lusztig projector {w}");
        match lusztig_projector(&table, w) {
            Ok(lp) => {
                let res = lp.sub(&weight_projector(&table, w));
                out.push(Check::holds(name, res.is_zero(), residual_witness(&res)));
            }
            Err(e @ QActionError::Integrality(_)) => out.push(Check::holds(name, false, Some(e.to_string()))),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `[e_i, f_j] p_lambda = delta_ij [<lambda, alpha_i^vee>]_i p_lambda` for all `i, j, lambda`.
pub fn commutator_checks(m: usize, n: usize) -> Result<Vec<Check>, QActionError> {
    let table = weight_table(m, n);
    let es: Vec<_> = (1..=m).map(|i| tensor_generator(Generator::E(i), m, n)).collect::<Result<_, _>>()?;
    let fs: Vec<_> = (1..=m).map(|i| tensor_generator(Generator::F(i), m, n)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            let c = es[i - 1].mul(&fs[j - 1]).sub(&fs[j - 1].mul(&es[i - 1]));
            let mut fail = None;
            for w in table.weights() {
                let p = weight_projector(&table, w);
                let lhs = c.mul(&p);
                let rhs = if i == j {
                    p.scale(&quantum_integer(w.pairing(i), node_kind(i, m)))
                } else {
                    SparseMatrix::zeros(p.dim())
                };
                let res = lhs.sub(&rhs);
                if !res.is_zero() {
                    fail = Some(format!("lambda={w} {}", residual_witness(&res).unwrap_or_default()));
                    break;
                }
            }
            out.push(Check::holds(format!("[E{i},F{j}] on weight spaces"), fail.is_none(), fail));
        }
    }
    Ok(out)
}

/// `k_i e_j k_i^-1 = q^{a_ij} e_j`; every `k_i` acts on weight `mu` by `q^{<mu, alpha_i^vee>}`.
pub fn cartan_conjugation_checks(m: usize, n: usize) -> Result<Vec<Check>, QActionError> {
    let a = cartan_matrix(m);
    let mut out = Vec::new();
    for i in 1..=m {
        let k = tensor_generator(Generator::K(i), m, n)?;
        let ki = tensor_generator(Generator::Kinv(i), m, n)?;
        for j in 1..=m {
            let e = tensor_generator(Generator::E(j), m, n)?;
            let res = k.mul(&e).mul(&ki).sub(&e.scale(&LaurentPoly::monomial(1, a[i - 1][j - 1] as i32)));
            out.push(Check::holds(format!("K{i} E{j} K{i}^-1"), res.is_zero(), residual_witness(&res)));
        }
    }
    Ok(out)
}

/// Every generator commutes with every `beta'_k` and `gamma'_k`.
pub fn commutation_checks(m: usize, n: usize) -> Result<Vec<Check>, QActionError> {
    let bmw: Vec<(String, SparseMatrix<LaurentPoly>)> = (1..n)
        .flat_map(|k| {
            [
                (format!("T{k}"), embed_at(&beta_prime(m), k, n, m).expect("in range")),
                (format!("E{k}"), embed_at(&gamma_prime(m), k, n, m).expect("in range")),
            ]
        })
        .collect();
    let mut out = Vec::new();
    for g in Generator::all(m) {
        let gm = tensor_generator(g, m, n)?;
        for (name, b) in &bmw {
            let res = gm.mul(b).sub(&b.mul(&gm));
            out.push(Check::holds(format!("[{g}, {name}] = 0"), res.is_zero(), residual_witness(&res)));
        }
    }
    Ok(out)
}
