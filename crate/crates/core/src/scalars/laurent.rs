use super::{Fp, ScalarError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of `Q[q, q^-1]`, kept as a sorted list of `(exponent, coefficient)`
/// pairs with no zero coefficients. Structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigRational)>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        Self::monomial_rat(rat(c), e)
    }

    pub fn monomial_rat(c: BigRational, e: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(it: I) -> Self {
        let mut acc: BTreeMap<i32, BigRational> = BTreeMap::new();
        for (e, c) in it {
            *acc.entry(e).or_insert_with(BigRational::zero) += c;
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_int_terms(pairs: &[(i32, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, rat(c))))
    }

    pub fn terms(&self) -> &[(i32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, e: i32) -> BigRational {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// True when every coefficient is an integer, i.e. the value lies in `Z[q, q^-1]`.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The involution `q -> q^-1` fixing coefficients.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        LaurentPoly { terms }
    }

    /// `q -> q^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k != 0);
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational, ScalarError> {
        if x.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(ScalarError::DivisionByZero);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), (-*e) as usize)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    /// Evaluates at `q = c` modulo `p`; rational coefficients must have denominators prime to `p`.
    pub fn eval_modp(&self, p: u64, c: u64) -> Result<Fp, ScalarError> {
        use super::{Field, Ring};
        let cc = Fp::new(c, p);
        let cinv = cc
            .inverse()
            .ok_or_else(|| ScalarError::BadEvaluation("q evaluated at 0".into()))?;
        let pb = BigInt::from(p);
        let mut acc = Fp::new(0, p);
        for (e, coef) in &self.terms {
            let n = Fp::from_bigint(coef.numer(), p);
            let d = Fp::from_bigint(coef.denom(), p);
            let dinv = d.inverse().ok_or_else(|| {
                ScalarError::BadEvaluation(format!("coefficient denominator divisible by {pb}"))
            })?;
            let base = if *e >= 0 { cc } else { cinv };
            let term = n.times(&dinv).times(&base.pow(e.unsigned_abs() as u64));
            acc = acc.plus(&term);
        }
        Ok(acc)
    }

    /// Exact quotient in `Q[q, q^-1]`, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dmin = divisor.min_exp().unwrap();
        let dmax = divisor.max_exp().unwrap();
        let lead = divisor.terms.last().unwrap().1.clone();
        // Long division from the top degree; units q^k are harmless.
        let mut rem: BTreeMap<i32, BigRational> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(i32, BigRational)> = Vec::new();
        let low = self.min_exp().unwrap() - dmin;
        loop {
            let (&top, _) = match rem.iter().next_back() {
                Some(t) => t,
                None => break,
            };
            let shift = top - dmax;
            if shift < low {
                return None;
            }
            let c = rem.remove(&top).unwrap() / &lead;
            for (e, dc) in &divisor.terms[..divisor.terms.len() - 1] {
                let key = e + shift;
                let entry = rem.entry(key).or_insert_with(BigRational::zero);
                *entry -= &c * dc;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push((shift, c));
        }
        quot.reverse();
        Some(LaurentPoly { terms: quot })
    }

    /// Numerator polynomial and shift: `self = q^shift * poly(q)` with `poly(0) != 0`.
    pub fn split_monomial(&self) -> (i32, Vec<BigRational>) {
        match self.min_exp() {
            None => (0, Vec::new()),
            Some(lo) => {
                let hi = self.max_exp().unwrap();
                let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
        }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }
}

impl super::Ring for LaurentPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
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
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_one(&self) -> bool {
        LaurentPoly::is_one(self)
    }
}

fn merge(a: &[(i32, BigRational)], b: &[(i32, BigRational)], negate_b: bool) -> LaurentPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
            out.push((b[j].0, c));
            j += 1;
        } else {
            let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    LaurentPoly { terms: out }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.terms.len() == 1 || rhs.terms.len() == 1 {
            let (mono, other) = if self.terms.len() == 1 { (self, rhs) } else { (rhs, self) };
            let (e, c) = &mono.terms[0];
            return LaurentPoly {
                terms: other.terms.iter().map(|(f, d)| (e + f, c * d)).collect(),
            };
        }
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .flat_map(|(e, c)| rhs.terms.iter().map(move |(f, d)| (e + f, c * d))),
        )
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(v: i64) -> Self {
        LaurentPoly::constant(v)
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim();
    let bad = || ScalarError::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let show_coeff = !a.is_one() || *e == 0;
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            }
            if *e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if *e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    coeffs: Vec<(i32, String)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentJson {
            coeffs: self.terms.iter().map(|(e, c)| (*e, fmt_rational(c))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = LaurentJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.coeffs.len());
        for (e, c) in raw.coeffs {
            terms.push((e, parse_rational(&c).map_err(serde::de::Error::custom)?));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}
