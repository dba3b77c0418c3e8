use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense polynomial in `Z[q]`, coefficients from the constant term upward,
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { c: vec![BigInt::one()] }
    }

    pub fn constant(v: BigInt) -> Self {
        Self::new(vec![v])
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    /// Divides every coefficient by `k`, which must divide them all.
    pub fn div_scalar(&self, k: &BigInt) -> Self {
        IntPoly { c: self.c.iter().map(|x| x / k).collect() }
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.content();
        let mut p = self.div_scalar(&g);
        if p.lc().is_negative() {
            p = p.neg();
        }
        p
    }

    pub fn neg(&self) -> Self {
        IntPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut r = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = BigInt::zero();
            if let Some(a) = self.c.get(i) {
                s += a;
            }
            if let Some(b) = o.c.get(i) {
                s += b;
            }
            r.push(s);
        }
        Self::new(r)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Self::new(r)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        IntPoly { c }
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn prem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-division by zero");
        if self.c.len() <= dd {
            return self.clone();
        }
        let lc = d.lc();
        let mut r = self.c.clone();
        for e in (dd..r.len()).rev() {
            let t = std::mem::take(&mut r[e]);
            for x in r[..e].iter_mut() {
                *x *= &lc;
            }
            if !t.is_zero() {
                for (i, dc) in d.c[..dd].iter().enumerate() {
                    r[e - dd + i] -= &t * dc;
                }
            }
        }
        r.truncate(dd);
        Self::new(r)
    }

    /// Primitive gcd with positive leading coefficient (gcd over `Q[q]`, normalized).
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_part();
        }
        if o.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.c.len() >= o.c.len() {
            (self.primitive_part(), o.primitive_part())
        } else {
            (o.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return IntPoly::one();
            }
            let r = a.prem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Exact quotient in `Z[q]`, or `None` when the division leaves a remainder
    /// or a non-integral coefficient.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.c.len() <= dd {
            return None;
        }
        let lc = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd].clone();
            if t.is_zero() {
                continue;
            }
            let (qq, rem) = t.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.c.iter().enumerate() {
                r[k + i] -= &qq * dc;
            }
            q[k] = qq;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly{:?}", self.c.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[1, 1]); // 1 + q
        let b = p(&[-1, 0, 1]); // q^2 - 1
        let c = p(&[1, 0, 1]); // q^2 + 1
        assert_eq!(a.mul(&c).gcd(&b.mul(&c)), a.mul(&c));
        assert_eq!(p(&[2, 2]).gcd(&p(&[4, 0, 4])), IntPoly::one());
        assert_eq!(p(&[-3, -3]).gcd(&IntPoly::zero()), p(&[1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 2, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
    }

    #[test]
    fn prem_identity() {
        // lc(d)^(k) * a = quot * d + prem, check prem has lower degree and divides out.
        let a = p(&[3, 0, 5, 7]);
        let d = p(&[1, 2]);
        let r = a.prem(&d);
        assert!(r.degree().unwrap_or(0) < 1);
        // a(-1/2) * 2^3 = r
        assert_eq!(r, p(&[3 * 8 + 5 * 2 - 7]));
    }
}
