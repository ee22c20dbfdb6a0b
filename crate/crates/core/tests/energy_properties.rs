use hypercert_core::arith::{central_binomial, PrecisionPolicy};
use hypercert_core::energy::{
    energy, energy_bruteforce, random_subset, sum_tally, verify_energy_bound,
    DEFAULT_BRUTEFORCE_CAP,
};
use hypercert_core::rug::ops::Pow;
use hypercert_core::rug::Integer;
use hypercert_core::{HypercubeSubset, Verdict};
use proptest::prelude::*;

fn subset(max_d: u32) -> impl Strategy<Value = HypercubeSubset> {
    (1..=max_d).prop_flat_map(|d| {
        proptest::collection::vec(any::<bool>(), 1usize << d).prop_filter_map(
            "nonempty",
            move |bits| {
                let vs = bits
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| **b)
                    .map(|(i, _)| i as u32);
                let a = HypercubeSubset::from_vertices(d, vs).unwrap();
                (!a.is_empty()).then_some(a)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn tally_mass_and_diagonal(a in subset(5), k in 1u32..5) {
        let t = sum_tally(&a, k).unwrap();
        let size = Integer::from(a.len());
        prop_assert_eq!(t.mass(), size.clone().pow(k));
        prop_assert!(t.energy() >= size.pow(k));
    }

    #[test]
    fn energy_grows_along_chains(a in subset(4), extra in proptest::collection::vec(0u32..16, 1..6), k in 1u32..4) {
        let mut b = a.clone();
        for v in extra {
            b.insert(v % b.vertex_count());
        }
        prop_assert!(a.is_subset_of(&b));
        prop_assert!(energy(&a, k).unwrap() <= energy(&b, k).unwrap());
    }

    #[test]
    fn product_rule(a in subset(3), b in subset(3), k in 1u32..4) {
        let ab = a.product(&b).unwrap();
        prop_assert_eq!(energy(&ab, k).unwrap(), energy(&a, k).unwrap() * energy(&b, k).unwrap());
    }

    #[test]
    fn hypercube_symmetries_preserve_energy(a in subset(5), flips in any::<u32>(), seed in any::<u64>(), k in 1u32..4) {
        let d = a.dim();
        let mut perm: Vec<u32> = (0..d).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let e = energy(&a, k).unwrap();
        prop_assert_eq!(energy(&a.permute(&perm).unwrap(), k).unwrap(), e.clone());
        prop_assert_eq!(energy(&a.flip(flips).unwrap(), k).unwrap(), e);
    }

    #[test]
    fn two_point_sets_give_central_binomial(d in 1u32..6, u in any::<u32>(), w in any::<u32>(), k in 1u32..=6) {
        let n = 1u32 << d;
        let (u, mut w) = (u % n, w % n);
        if u == w {
            w = (w + 1) % n;
        }
        let a = HypercubeSubset::from_vertices(d, [u, w]).unwrap();
        prop_assert_eq!(energy(&a, k).unwrap(), central_binomial(k));
    }
}

#[test]
fn convolution_matches_bruteforce() {
    for mask in 1u64..16 {
        let a = HypercubeSubset::from_mask_u64(2, mask).unwrap();
        for k in 1..=3 {
            let brute = energy_bruteforce(&a, k, DEFAULT_BRUTEFORCE_CAP).unwrap();
            assert_eq!(energy(&a, k).unwrap(), brute, "mask={mask:#x} k={k}");
        }
    }
    for i in 0..50 {
        let a = random_subset(3, 99, i).unwrap();
        let brute = energy_bruteforce(&a, 2, DEFAULT_BRUTEFORCE_CAP).unwrap();
        assert_eq!(energy(&a, 2).unwrap(), brute, "{a:?}");
    }
}

#[test]
fn full_cubes_attain_the_bound() {
    let p = PrecisionPolicy::default();
    for d in 1..=4 {
        for k in 1..=5 {
            let r = verify_energy_bound(&HypercubeSubset::full(d).unwrap(), k, p).unwrap();
            assert_eq!(r.verdict, Verdict::ExactEquality, "d={d} k={k}");
            assert_eq!(r.energy, central_binomial(k).pow(d));
        }
    }
}
