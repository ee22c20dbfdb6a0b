use hypercert_core::arith::PrecisionPolicy;
use hypercert_core::rug::Rational;
use hypercert_core::walk::{
    endpoint_probs, equivalence_check, middle_prob_formula, verify_probineq, walk_distribution,
};
use hypercert_core::{Certainty, Verdict, WalkLaw};
use proptest::prelude::*;

fn law() -> impl Strategy<Value = WalkLaw> {
    (0i64..=60, 60i64..=60).prop_map(|(n, d)| WalkLaw::new(Rational::from((n, d))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distributions_are_normalized(l in law(), n in 0u32..40) {
        let d = walk_distribution(&l, n);
        prop_assert_eq!(d.total(), 1);
        prop_assert!(d.iter().all(|(_, p)| *p >= 0));
    }

    #[test]
    fn mirror_reflects_the_law(l in law(), n in 0u32..30) {
        let d = walk_distribution(&l, n);
        let m = walk_distribution(&l.mirror(), n);
        let n = i64::from(n);
        for v in -n..=n {
            prop_assert_eq!(d.prob(v), m.prob(-v));
        }
    }

    #[test]
    fn convolution_is_consistent(l in law(), a in 0u32..15, b in 0u32..15) {
        let joint = walk_distribution(&l, a).convolve(&walk_distribution(&l, b));
        prop_assert_eq!(joint, walk_distribution(&l, a + b));
    }

    #[test]
    fn inequality_never_fails(l in law(), k in 1u32..60) {
        let r = verify_probineq(&l, k, PrecisionPolicy::default()).unwrap();
        prop_assert!(r.verdict.holds(), "{:?}", r);
    }
}

#[test]
fn middle_probability_formula_matches_distribution() {
    for i in 0..=20 {
        let l = WalkLaw::new(Rational::from((i, 20))).unwrap();
        for k in 1..=100 {
            let d = walk_distribution(&l, k);
            let (left, mid, right) = endpoint_probs(&l, k).unwrap();
            assert_eq!(mid, d.prob(0), "q={i}/20 k={k}");
            assert_eq!(mid, middle_prob_formula(&l, k));
            assert_eq!(left, d.prob(-i64::from(k)));
            assert_eq!(right, d.prob(i64::from(k)));
        }
    }
}

#[test]
fn equivalence_on_a_coarse_grid() {
    for i in (0..=20).step_by(4) {
        let l = WalkLaw::new(Rational::from((i, 20))).unwrap();
        for k in [1, 2, 9, 30] {
            let c = equivalence_check(&l, k, PrecisionPolicy::default()).unwrap();
            assert_eq!(c, Certainty::CertainTrue, "q={i}/20 k={k}");
        }
    }
}

#[test]
fn exact_cases_are_algebraic() {
    for k in 1..=30 {
        for q in [(0, 1), (1, 2), (1, 1)] {
            let l = WalkLaw::new(Rational::from(q)).unwrap();
            let r = verify_probineq(&l, k, PrecisionPolicy::default()).unwrap();
            assert_eq!(r.verdict, Verdict::ExactEquality);
        }
    }
}
