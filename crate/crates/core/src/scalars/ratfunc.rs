use super::{IntPoly, LaurentPoly, ScalarError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A reduced element of `Q(q)`.
///
/// Canonical form: `num, den` in `Z[q]`, coprime in `Q[q]`, with the gcd of all
/// their coefficients equal to 1 and `lc(den) > 0`. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: IntPoly::one(), den: IntPoly::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(IntPoly::from_i64(&[v]), IntPoly::one()).unwrap()
    }

    /// `num / den` reduced to canonical form.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.degree() == Some(0) || num.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn from_laurent(x: &LaurentPoly) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let l = x.denominator_lcm();
        let (shift, coeffs) = x.split_monomial();
        let lr = BigRational::from_integer(l.clone());
        let num = IntPoly::new(coeffs.iter().map(|c| (c * &lr).to_integer()).collect());
        let (num, den) = if shift >= 0 {
            (num.shift(shift as usize), IntPoly::constant(l))
        } else {
            (num, IntPoly::constant(l).shift((-shift) as usize))
        };
        Self::normalize(num, den)
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    /// The Laurent polynomial equal to `self`, if the denominator is `c * q^k`.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let dc = self.den.coeffs();
        let k = dc.len() - 1;
        if dc[..k].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let lead = &dc[k];
        Some(LaurentPoly::from_terms(self.num.coeffs().iter().enumerate().map(|(i, c)| {
            (i as i32 - k as i32, BigRational::new(c.clone(), lead.clone()))
        })))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::normalize(self.num.add(&o.num), self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let (bd, dd) = if g.is_one() {
            (self.den.clone(), o.den.clone())
        } else {
            (self.den.div_exact(&g).unwrap(), o.den.div_exact(&g).unwrap())
        };
        let num = self.num.mul(&dd).add(&o.num.mul(&bd));
        Self::normalize(num, self.den.mul(&dd))
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::normalize(self.num.mul(&o.num), IntPoly::one());
        }
        let cancel = |a: &IntPoly, b: &IntPoly| {
            let g = a.gcd(b);
            if g.is_one() {
                (a.clone(), b.clone())
            } else {
                (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
            }
        };
        let (a, d) = cancel(&self.num, &o.den);
        let (c, b) = cancel(&o.num, &self.den);
        Self::normalize(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalize(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&o.inv().ok_or(ScalarError::DivisionByZero)?))
    }

    /// Evaluation at a rational point; fails on a pole.
    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational, ScalarError> {
        let ev = |p: &IntPoly| {
            p.coeffs()
                .iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
        };
        let d = ev(&self.den);
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(ev(&self.num) / d)
    }
}

impl super::Ring for RatFunc {
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
}

impl super::Field for RatFunc {
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}

fn poly_to_laurent(p: &IntPoly) -> LaurentPoly {
    LaurentPoly::from_terms(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (i as i32, BigRational::from_integer(c.clone()))),
    )
}

fn laurent_to_poly(x: &LaurentPoly) -> Result<IntPoly, String> {
    if x.min_exp().is_some_and(|e| e < 0) || !x.is_integral() {
        return Err("expected a polynomial with integer coefficients".into());
    }
    let n = x.max_exp().map_or(0, |e| e as usize + 1);
    let mut c = vec![BigInt::zero(); n];
    for (e, v) in x.terms() {
        c[*e as usize] = v.to_integer();
    }
    Ok(IntPoly::new(c))
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", poly_to_laurent(&self.num))
        } else {
            write!(f, "({})/({})", poly_to_laurent(&self.num), poly_to_laurent(&self.den))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct RatJson {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatJson { num: poly_to_laurent(&self.num), den: poly_to_laurent(&self.den) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RatJson::deserialize(d)?;
        let num = laurent_to_poly(&raw.num).map_err(serde::de::Error::custom)?;
        let den = laurent_to_poly(&raw.den).map_err(serde::de::Error::custom)?;
        RatFunc::new(num, den).map_err(serde::de::Error::custom)
    }
}
