use super::{Evaluation, Field, LaurentPoly, Mode, Ring, ScalarError};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// A residue modulo a prime `p < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin; the bases 2, 7, 61 suffice below `2^32`, and the
/// extended set covers all of `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let bases: &[u64] = if n < 4_294_967_296 {
        &[2, 7, 61]
    } else {
        &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    };
    'outer: for &a in bases {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn from_i64(v: i64, p: u64) -> Self {
        let r = v.rem_euclid(p as i64) as u64;
        Fp { v: r, p }
    }

    pub fn from_bigint(v: &BigInt, p: u64) -> Self {
        let r = v % BigInt::from(p);
        let r = r.to_i64().expect("residue fits");
        Self::from_i64(r, p)
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, e: u64) -> Self {
        Fp { v: powmod(self.v, e, self.p), p: self.p }
    }
}

impl Ring for Fp {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v + rhs.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn minus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let v = if self.v >= rhs.v { self.v - rhs.v } else { self.v + self.p - rhs.v };
        Fp { v, p: self.p }
    }
    fn times(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { v: mulmod(self.v, rhs.v, self.p), p: self.p }
    }
    fn negate(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
}

impl Field for Fp {
    fn inverse(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

/// Evaluation `q -> c` into `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModpEval {
    pub p: u64,
    pub c: u64,
}

impl ModpEval {
    /// Checks that `p` is prime and that `c` has multiplicative order above `order_bound`,
    /// so no `q`-number of degree up to that bound vanishes at `c`.
    pub fn new(p: u64, c: u64, order_bound: u64) -> Result<Self, ScalarError> {
        if !is_prime_u64(p) || p >= 1 << 32 {
            return Err(ScalarError::BadEvaluation(format!("{p} is not a prime below 2^32")));
        }
        let c = c % p;
        if c == 0 {
            return Err(ScalarError::BadEvaluation("q evaluated at 0".into()));
        }
        let mut x = 1u64;
        for k in 1..=order_bound {
            x = mulmod(x, c, p);
            if x == 1 {
                return Err(ScalarError::BadEvaluation(format!("{c}^{k} = 1 mod {p}")));
            }
        }
        Ok(ModpEval { p, c })
    }

    /// A random prime in `(2^30, 2^31)` together with an admissible evaluation point.
    /// `attempt` selects an independent draw from the same seed.
    pub fn random(seed: u64, attempt: u32, order_bound: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        loop {
            let p = rng.gen_range((1u64 << 30) + 1..(1u64 << 31)) | 1;
            if !is_prime_u64(p) {
                continue;
            }
            for _ in 0..64 {
                let c = rng.gen_range(2..p - 1);
                if let Ok(ev) = ModpEval::new(p, c, order_bound) {
                    return ev;
                }
            }
        }
    }

    /// A deterministic point at a given prime, scanning `c = 2, 3, ...`.
    pub fn at_prime(p: u64, order_bound: u64) -> Result<Self, ScalarError> {
        if !is_prime_u64(p) || p >= 1 << 32 {
            return Err(ScalarError::BadEvaluation(format!("{p} is not a prime below 2^32")));
        }
        (2..p.min(10_000))
            .find_map(|c| ModpEval::new(p, c, order_bound).ok())
            .ok_or_else(|| ScalarError::BadEvaluation(format!("no admissible point mod {p}")))
    }
}

impl Evaluation<Fp> for ModpEval {
    fn apply(&self, x: &LaurentPoly) -> Result<Fp, ScalarError> {
        x.eval_modp(self.p, self.c)
    }
    fn zero(&self) -> Fp {
        Fp::new(0, self.p)
    }
    fn one(&self) -> Fp {
        Fp::new(1, self.p)
    }
    fn mode(&self) -> Mode {
        Mode::Modp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(2_147_483_649));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn field_axioms_spot() {
        let p = 1_073_741_827;
        let a = Fp::new(123_456_789, p);
        let inv = a.inverse().unwrap();
        assert!(a.times(&inv).is_one());
        assert!(a.plus(&a.negate()).is_zero());
        assert_eq!(Fp::from_i64(-1, p).value(), p - 1);
    }

    #[test]
    fn random_point_is_reproducible() {
        let a = ModpEval::random(7, 0, 48);
        let b = ModpEval::random(7, 0, 48);
        let c = ModpEval::random(7, 1, 48);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.p > 1 << 30 && a.p < 1 << 31);
    }

    #[test]
    fn low_order_points_rejected() {
        assert!(ModpEval::new(13, 1, 4).is_err());
        assert!(ModpEval::new(13, 12, 4).is_err()); // order 2
        assert!(ModpEval::new(13, 2, 11).is_ok()); // 2 is a primitive root
        assert!(ModpEval::new(15, 2, 1).is_err());
    }
}
