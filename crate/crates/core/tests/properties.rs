use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use typec_core::bmw::{enyang_indices, enyang_word, relation_checks, BmwParams, BmwRep};
use typec_core::centralizer::{double_commutant_dim, duality_report, phi_image};
use typec_core::coordalg::oehms_rank_check;
use typec_core::evaluation::{order_bound, EvalPlan};
use typec_core::scalars::{ExactField, LaurentMode, LaurentPoly, ModpEval, Mode, RationalPoint};
use typec_core::tensorspace::SparseMatrix;
use typec_core::truncation::{theta0, RankPair};

#[test]
fn exact_and_prime_field_dimensions_agree() {
    for (m, n) in [(1, 2), (1, 3), (2, 2)] {
        let (ex, _) = duality_report(m, n, &EvalPlan::new(Mode::Exact, 0, None, m, n)).unwrap();
        for seed in [1, 2] {
            let (mp, _) = duality_report(m, n, &EvalPlan::new(Mode::Modp, seed, None, m, n)).unwrap();
            assert_eq!(ex.params, mp.params, "m={m} n={n} seed={seed}");
            assert!(mp.passed());
        }
    }
    let (ex, _) = oehms_rank_check(1, 2, &EvalPlan::new(Mode::Exact, 0, None, 1, 2)).unwrap();
    let (mp, _) = oehms_rank_check(1, 2, &EvalPlan::new(Mode::Modp, 3, None, 1, 2)).unwrap();
    assert_eq!(ex.params, mp.params);
}

#[test]
fn double_commutant_closes() {
    for (m, n, want) in [(1, 2, 2), (2, 2, 3)] {
        assert_eq!(double_commutant_dim(m, n, &ExactField).unwrap(), want);
        assert_eq!(phi_image(m, n, &ExactField).unwrap().dim(), want);
    }
}

#[test]
fn fixed_prime_is_used_first() {
    let plan = EvalPlan::new(Mode::Modp, 9, Some(2_147_483_647), 1, 2);
    let (r, _) = duality_report(1, 2, &plan).unwrap();
    let e = r.evaluation.unwrap();
    assert_eq!((e.p, e.attempt), (2_147_483_647, 0));
    assert!(r.passed());
}

fn small_q() -> impl Strategy<Value = BigRational> {
    (1i64..6, 1i64..6, any::<bool>()).prop_filter_map("q = +-1 is degenerate for x", |(a, b, neg)| {
        let q = BigRational::new(BigInt::from(if neg { -a } else { a }), BigInt::from(b));
        (q.numer() != q.denom() && -q.numer() != *q.denom()).then_some(q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relations_hold_at_rational_q(q in small_q(), m in 1usize..=2) {
        let ev = RationalPoint(q);
        let rep = BmwRep::evaluated(m, 3, &ev).unwrap();
        let p = BmwParams::specialized(m).evaluate(&ev).unwrap();
        for c in relation_checks(&rep, &p, "") {
            prop_assert!(c.passed(), "{}", c.name);
        }
    }

    #[test]
    fn theta0_is_linear_on_word_combinations(coeffs in prop::collection::vec(-3i64..4, 15)) {
        let p = RankPair::new(1, 2, 3).unwrap();
        let big = BmwRep::laurent(2, 3);
        let small = BmwRep::laurent(1, 3);
        let mut lhs = SparseMatrix::zeros(p.big_dim());
        let mut rhs = SparseMatrix::zeros(p.small_dim());
        for (idx, &c) in enyang_indices(3).iter().zip(&coeffs) {
            let w = enyang_word(idx);
            let k = LaurentPoly::constant(c);
            lhs = lhs.add(&big.represent(&w).scale(&k));
            rhs = rhs.add(&small.represent(&w).scale(&k));
        }
        prop_assert_eq!(theta0(&lhs, &p, &LaurentMode).unwrap(), rhs.scale(&p.scale()));
    }

    #[test]
    fn prime_points_respect_order_bound(seed in any::<u64>(), attempt in 0u32..5) {
        let bound = order_bound(3, 3);
        let ev = ModpEval::random(seed, attempt, bound);
        prop_assert!(ev.p > 1 << 30 && ev.p < 1 << 31);
        let mut x = 1u128;
        for k in 1..=bound {
            x = x * ev.c as u128 % ev.p as u128;
            prop_assert!(x != 1, "c has order {} <= {}", k, bound);
        }
    }
}
