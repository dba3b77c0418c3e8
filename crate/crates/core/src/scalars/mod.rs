//! Exact scalar arithmetic and the linear-algebra kernels built on it.
//!
//! Three coefficient domains are supported:
//!
//! * [`LaurentPoly`]: elements of `Z[q, q^-1]` (stored with rational
//!   coefficients so that exact division results stay representable),
//! * [`RatFunc`]: reduced rational functions in `Q(q)`,
//! * [`Fp`]: residues modulo a word-sized prime, obtained by evaluating `q`
//!   at a fixed unit.
//!
//! Operators are always assembled over [`LaurentPoly`]; an [`Evaluation`]
//! moves them into a field right before elimination.

mod fp;
pub mod linalg;
mod laurent;
mod poly;
mod qnum;
mod ratfunc;
mod scalar;

pub use fp::{is_prime_u64, Fp, ModpEval};
pub use laurent::LaurentPoly;
pub use poly::IntPoly;
pub use qnum::{bar, bmw_x, quantum_factorial, quantum_integer, NodeKind};
pub use ratfunc::RatFunc;
pub use scalar::{nullspace, rank, solve, Mode, Scalar};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("bad evaluation: {0}")]
    BadEvaluation(String),
    #[error("division is not exact: {0}")]
    NotExact(String),
    #[error("mixed scalar modes: {0} and {1}")]
    MixedModes(&'static str, &'static str),
    #[error("negative argument {0}")]
    Negative(i64),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Commutative ring operations used by the sparse matrix code.
///
/// Elements of residue rings carry their modulus, so zero and one are
/// produced from an existing element rather than from nothing.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
}

/// A ring homomorphism out of `Z[q, q^-1]`.
pub trait Evaluation<T: Ring>: Sync {
    fn apply(&self, x: &LaurentPoly) -> Result<T, ScalarError>;
    fn zero(&self) -> T;
    fn one(&self) -> T;
    fn mode(&self) -> Mode;
}

/// Keeps operators in `Z[q, q^-1]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct LaurentMode;

impl Evaluation<LaurentPoly> for LaurentMode {
    fn apply(&self, x: &LaurentPoly) -> Result<LaurentPoly, ScalarError> {
        Ok(x.clone())
    }
    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn mode(&self) -> Mode {
        Mode::Laurent
    }
}

/// The canonical embedding `Z[q, q^-1] -> Q(q)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactField;

impl Evaluation<RatFunc> for ExactField {
    fn apply(&self, x: &LaurentPoly) -> Result<RatFunc, ScalarError> {
        Ok(RatFunc::from_laurent(x))
    }
    fn zero(&self) -> RatFunc {
        RatFunc::zero()
    }
    fn one(&self) -> RatFunc {
        RatFunc::one()
    }
    fn mode(&self) -> Mode {
        Mode::Exact
    }
}

/// Specialization of `q` at a nonzero rational number.
#[derive(Clone, Debug)]
pub struct RationalPoint(pub BigRational);

impl RationalPoint {
    pub fn integer(v: i64) -> Self {
        RationalPoint(BigRational::from_integer(BigInt::from(v)))
    }
}

impl Evaluation<BigRational> for RationalPoint {
    fn apply(&self, x: &LaurentPoly) -> Result<BigRational, ScalarError> {
        x.eval_rational(&self.0)
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn mode(&self) -> Mode {
        Mode::Rational
    }
}

impl Ring for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}
