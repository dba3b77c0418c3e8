use super::{LaurentPoly, ScalarError};

/// Short simple roots use `q_i = q`, the long root `alpha_m` uses `q_i = q^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Short,
    Long,
}

impl NodeKind {
    /// Exponent `e` with `q_i = q^e`.
    pub fn step(self) -> i32 {
        match self {
            NodeKind::Short => 1,
            NodeKind::Long => 2,
        }
    }
}

/// `[k]_i = (q_i^k - q_i^-k) / (q_i - q_i^-1)`, with `[-k] = -[k]`.
pub fn quantum_integer(k: i64, node: NodeKind) -> LaurentPoly {
    let s = node.step();
    let a = k.unsigned_abs() as i32;
    let p = LaurentPoly::from_int_terms(
        &(0..a).map(|j| (s * (a - 1 - 2 * j), 1)).collect::<Vec<_>>(),
    );
    if k < 0 {
        -p
    } else {
        p
    }
}

pub fn quantum_factorial(k: i64, node: NodeKind) -> Result<LaurentPoly, ScalarError> {
    if k < 0 {
        return Err(ScalarError::Negative(k));
    }
    Ok((1..=k).fold(LaurentPoly::one(), |acc, j| &acc * &quantum_integer(j, node)))
}

/// The loop parameter `x = 1 - sum_{i=-m}^{m} q^(2i)`.
pub fn bmw_x(m: usize) -> LaurentPoly {
    let m = m as i32;
    let mut terms = vec![(0, 1)];
    terms.extend((-m..=m).map(|i| (2 * i, -1)));
    LaurentPoly::from_int_terms(&terms)
}

pub fn bar(f: &LaurentPoly) -> LaurentPoly {
    f.bar()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(pairs: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(pairs)
    }

    #[test]
    fn small_values() {
        assert_eq!(quantum_integer(2, NodeKind::Short), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(quantum_integer(2, NodeKind::Long), lp(&[(2, 1), (-2, 1)]));
        assert_eq!(quantum_integer(3, NodeKind::Short), lp(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(quantum_integer(-2, NodeKind::Short), lp(&[(1, -1), (-1, -1)]));
        assert!(quantum_integer(0, NodeKind::Short).is_zero());
    }

    #[test]
    fn factorials() {
        assert!(quantum_factorial(0, NodeKind::Short).unwrap().is_one());
        assert_eq!(quantum_factorial(2, NodeKind::Short).unwrap(), lp(&[(1, 1), (-1, 1)]));
        // Oracle: multiply the two factors by hand-expanded convolution.
        let three = [(2, 1), (0, 1), (-2, 1)];
        let two = [(1, 1), (-1, 1)];
        let mut prod = Vec::new();
        for &(a, x) in &three {
            for &(b, y) in &two {
                prod.push((a + b, x * y));
            }
        }
        assert_eq!(quantum_factorial(3, NodeKind::Short).unwrap(), lp(&prod));
        assert_eq!(quantum_factorial(-1, NodeKind::Short), Err(ScalarError::Negative(-1)));
    }

    #[test]
    fn loop_parameter() {
        assert!(bmw_x(0).is_zero());
        assert_eq!(bmw_x(1), lp(&[(2, -1), (-2, -1)]));
        for m in 1..=3i32 {
            let z = lp(&[(1, 1), (-1, -1)]);
            let r = LaurentPoly::monomial(-1, 2 * m + 1);
            let rinv = LaurentPoly::monomial(-1, -(2 * m + 1));
            let lhs = &(&(&LaurentPoly::one() - &bmw_x(m as usize)) * &z) + &(&r - &rinv);
            assert!(lhs.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn bar_examples() {
        assert_eq!(bar(&LaurentPoly::q()), LaurentPoly::monomial(1, -1));
        assert_eq!(bar(&lp(&[(1, 1), (0, 2)])), lp(&[(-1, 1), (0, 2)]));
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i32..6, -5i64..5), 0..6).prop_map(|v| lp(&v))
    }

    proptest! {
        #[test]
        fn quantum_integer_identity(k in -12i64..12, long in any::<bool>()) {
            let node = if long { NodeKind::Long } else { NodeKind::Short };
            let s = node.step();
            let diff = lp(&[(s, 1), (-s, -1)]);
            let kk = k as i32;
            let rhs = lp(&[(s * kk, 1), (-s * kk, -1)]);
            prop_assert_eq!(&quantum_integer(k, node) * &diff, rhs);
        }

        #[test]
        fn bar_is_ring_involution(a in arb_laurent(), b in arb_laurent()) {
            prop_assert_eq!(bar(&bar(&a)), a.clone());
            prop_assert_eq!(bar(&(&a * &b)), &bar(&a) * &bar(&b));
            prop_assert_eq!(bar(&(&a + &b)), &bar(&a) + &bar(&b));
        }

        #[test]
        fn ratfunc_agrees_with_laurent(a in arb_laurent(), b in arb_laurent()) {
            use super::super::RatFunc;
            let (ra, rb) = (RatFunc::from_laurent(&a), RatFunc::from_laurent(&b));
            prop_assert_eq!(ra.add(&rb), RatFunc::from_laurent(&(&a + &b)));
            prop_assert_eq!(ra.mul(&rb), RatFunc::from_laurent(&(&a * &b)));
            prop_assert_eq!(ra.sub(&rb), RatFunc::from_laurent(&(&a - &b)));
            if let Some(q) = (&a * &b).div_exact(&b) {
                prop_assert_eq!(q, a.clone());
            }
        }
    }
}
