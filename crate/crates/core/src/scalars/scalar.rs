use super::linalg::{self, SparseVec};
use super::{Field, Fp, LaurentPoly, RatFunc, Ring, ScalarError};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which coefficient domain a computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `Z[q, q^-1]`, rank by fraction-free elimination.
    Laurent,
    /// `Q(q)`.
    Exact,
    /// `q` specialized at a rational number.
    Rational,
    /// `q` specialized at a unit of a prime field.
    Modp,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Laurent => "laurent",
            Mode::Exact => "exact",
            Mode::Rational => "rational",
            Mode::Modp => "modp",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        match s {
            "laurent" => Ok(Mode::Laurent),
            "exact" => Ok(Mode::Exact),
            "rational" => Ok(Mode::Rational),
            "modp" => Ok(Mode::Modp),
            _ => Err(ScalarError::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// A scalar tagged with its domain. Arithmetic between different tags is an error.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "mode", content = "value", rename_all = "lowercase")]
pub enum Scalar {
    Laurent(LaurentPoly),
    Exact(RatFunc),
    Modp { p: u64, v: u64 },
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Laurent(_) => Mode::Laurent,
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Modp { .. } => Mode::Modp,
        }
    }

    pub fn from_fp(x: Fp) -> Self {
        Scalar::Modp { p: x.modulus(), v: x.value() }
    }

    fn mixed(&self, o: &Self) -> ScalarError {
        ScalarError::MixedModes(self.mode().as_str(), o.mode().as_str())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ScalarError> {
        match (self, o) {
            (Scalar::Laurent(a), Scalar::Laurent(b)) => Ok(Scalar::Laurent(a + b)),
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.add(b))),
            (Scalar::Modp { p, v }, Scalar::Modp { p: p2, v: v2 }) if p == p2 => {
                Ok(Scalar::from_fp(Fp::new(*v, *p).plus(&Fp::new(*v2, *p))))
            }
            _ => Err(self.mixed(o)),
        }
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ScalarError> {
        match (self, o) {
            (Scalar::Laurent(a), Scalar::Laurent(b)) => Ok(Scalar::Laurent(a * b)),
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.mul(b))),
            (Scalar::Modp { p, v }, Scalar::Modp { p: p2, v: v2 }) if p == p2 => {
                Ok(Scalar::from_fp(Fp::new(*v, *p).times(&Fp::new(*v2, *p))))
            }
            _ => Err(self.mixed(o)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Laurent(a) => a.is_zero(),
            Scalar::Exact(a) => a.is_zero(),
            Scalar::Modp { v, .. } => *v == 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Laurent(a) => write!(f, "{a}"),
            Scalar::Exact(a) => write!(f, "{a}"),
            Scalar::Modp { v, p } => write!(f, "{v} mod {p}"),
        }
    }
}

enum Typed {
    Laurent(Vec<Vec<LaurentPoly>>),
    Exact(Vec<Vec<RatFunc>>),
    Modp(Vec<Vec<Fp>>),
}

fn common_mode(m: &[Vec<Scalar>]) -> Result<Option<(Mode, u64)>, ScalarError> {
    let mut seen: Option<&Scalar> = None;
    for x in m.iter().flatten() {
        match seen {
            None => seen = Some(x),
            Some(s) => {
                let same = match (s, x) {
                    (Scalar::Modp { p, .. }, Scalar::Modp { p: p2, .. }) => p == p2,
                    _ => s.mode() == x.mode(),
                };
                if !same {
                    return Err(s.mixed(x));
                }
            }
        }
    }
    Ok(seen.map(|s| {
        let p = if let Scalar::Modp { p, .. } = s { *p } else { 0 };
        (s.mode(), p)
    }))
}

fn typed(m: &[Vec<Scalar>]) -> Result<Typed, ScalarError> {
    let (mode, _) = common_mode(m)?.unwrap_or((Mode::Exact, 0));
    Ok(match mode {
        Mode::Laurent => Typed::Laurent(
            m.iter()
                .map(|r| r.iter().map(|x| if let Scalar::Laurent(a) = x { a.clone() } else { unreachable!() }).collect())
                .collect(),
        ),
        Mode::Exact | Mode::Rational => Typed::Exact(
            m.iter()
                .map(|r| r.iter().map(|x| if let Scalar::Exact(a) = x { a.clone() } else { unreachable!() }).collect())
                .collect(),
        ),
        Mode::Modp => Typed::Modp(
            m.iter()
                .map(|r| {
                    r.iter()
                        .map(|x| if let Scalar::Modp { p, v } = x { Fp::new(*v, *p) } else { unreachable!() })
                        .collect()
                })
                .collect(),
        ),
    })
}

fn sparse_rows<F: Field>(m: &[Vec<F>]) -> Vec<SparseVec<F>> {
    m.iter().map(|r| linalg::sparse_from_dense(r)).collect()
}

fn ncols(m: &[Vec<Scalar>]) -> usize {
    m.first().map_or(0, |r| r.len())
}

/// Rank of a dense matrix whose entries share one mode.
pub fn rank(m: &[Vec<Scalar>]) -> Result<usize, ScalarError> {
    let n = ncols(m);
    Ok(match typed(m)? {
        Typed::Laurent(a) => linalg::bareiss_rank(a)?,
        Typed::Exact(a) => linalg::rank(&sparse_rows(&a), n),
        Typed::Modp(a) => linalg::rank(&sparse_rows(&a), n),
    })
}

fn unlaurent(m: &[Vec<Scalar>]) -> Result<(), ScalarError> {
    if matches!(common_mode(m)?, Some((Mode::Laurent, _))) {
        return Err(ScalarError::BadEvaluation(
            "Laurent matrices only support rank; convert to a field mode first".into(),
        ));
    }
    Ok(())
}

/// Basis of the right kernel; see [`linalg::nullspace`] for the ordering.
pub fn nullspace(m: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, ScalarError> {
    unlaurent(m)?;
    let n = ncols(m);
    Ok(match typed(m)? {
        Typed::Exact(a) => linalg::nullspace(&sparse_rows(&a), n, &RatFunc::one())
            .iter()
            .map(|v| linalg::dense_from_sparse(v, n, &RatFunc::zero()).into_iter().map(Scalar::Exact).collect())
            .collect(),
        Typed::Modp(a) => {
            let p = a.iter().flatten().next().map(|x| x.modulus()).unwrap_or(2);
            linalg::nullspace(&sparse_rows(&a), n, &Fp::new(1, p))
                .iter()
                .map(|v| linalg::dense_from_sparse(v, n, &Fp::new(0, p)).into_iter().map(Scalar::from_fp).collect())
                .collect()
        }
        Typed::Laurent(_) => unreachable!(),
    })
}

/// One solution of `m x = b`, or `Ok(None)` when the system is inconsistent.
pub fn solve(m: &[Vec<Scalar>], b: &[Scalar]) -> Result<Option<Vec<Scalar>>, ScalarError> {
    let mut aug: Vec<Vec<Scalar>> = m.to_vec();
    for (r, x) in aug.iter_mut().zip(b) {
        r.push(x.clone());
    }
    unlaurent(&aug)?;
    let n = ncols(m);
    Ok(match typed(&aug)? {
        Typed::Exact(a) => {
            let (rows, rhs): (Vec<_>, Vec<_>) = a.into_iter().map(|mut r| (r.drain(..n).collect::<Vec<_>>(), r[0].clone())).unzip();
            linalg::solve(&sparse_rows(&rows), &rhs, n).map(|x| x.into_iter().map(Scalar::Exact).collect())
        }
        Typed::Modp(a) => {
            let (rows, rhs): (Vec<_>, Vec<_>) = a.into_iter().map(|mut r| (r.drain(..n).collect::<Vec<_>>(), r[0])).unzip();
            linalg::solve(&sparse_rows(&rows), &rhs, n).map(|x| x.into_iter().map(Scalar::from_fp).collect())
        }
        Typed::Laurent(_) => unreachable!(),
    })
}
