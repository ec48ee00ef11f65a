//! The optimised library against the brute-force references.

use std::collections::BTreeSet;

use proptest::prelude::*;
use regularity::generate::random;
use regularity::regularity::check_regular_pair;
use regularity::roth::{find_progression3, roth_aux_verify};
use regularity::triangles::triangle_set;
use regularity::{ratio, Rational, VertexSet};
use regularity_oracles::{brute_regular_pair, brute_triangles, max_ap_free, OracleConfig};

fn from_mask(mask: u32, n: usize) -> VertexSet {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn epsilon() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(ratio(1, 10)), Just(ratio(1, 5)), Just(ratio(1, 4)), Just(ratio(1, 3)), Just(ratio(1, 2)), Just(ratio(2, 3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pair_checker_matches_enumeration(
        n in 2usize..=10,
        p_num in 0i64..=4,
        seed in any::<u64>(),
        xmask in any::<u32>(),
        ymask in any::<u32>(),
        eps in epsilon(),
    ) {
        let g = random(n, &ratio(p_num, 4), seed).unwrap();
        let xs: VertexSet = from_mask(xmask, n).into_iter().take(6).collect();
        let ys: VertexSet = from_mask(ymask, n).into_iter().take(6).collect();
        let fast = check_regular_pair(&xs, &ys, &g, &eps).unwrap();
        let slow = brute_regular_pair(&xs, &ys, &g, &eps, false, &OracleConfig::default()).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn strict_and_non_strict_agree_on_sides_of_two(
        n in 4usize..=10,
        seed in any::<u64>(),
        xmask in any::<u32>(),
        ymask in any::<u32>(),
        eps in epsilon(),
    ) {
        let g = random(n, &ratio(1, 2), seed).unwrap();
        let xs: VertexSet = from_mask(xmask, n).into_iter().take(6).collect();
        let ys: VertexSet = from_mask(ymask, n).into_iter().take(6).collect();
        prop_assume!(xs.len() >= 2 && ys.len() >= 2);
        let cfg = OracleConfig::default();
        let loose = brute_regular_pair(&xs, &ys, &g, &eps, false, &cfg).unwrap();
        let strict = brute_regular_pair(&xs, &ys, &g, &eps, true, &cfg).unwrap();
        prop_assert_eq!(loose.is_regular(), strict.is_regular());
    }

    #[test]
    fn triangle_listing_matches_triple_loop(n in 0usize..=16, p_num in 0i64..=4, seed in any::<u64>()) {
        let g = random(n, &ratio(p_num, 4), seed).unwrap();
        prop_assert_eq!(triangle_set(&g), brute_triangles(&g).unwrap());
    }
}

#[test]
fn singleton_side_separates_the_variants() {
    // With |X| = 1 the strict variant has no admissible A at all.
    let g = regularity::UGraph::on_range(3, [(0, 1)]).unwrap();
    let cfg = OracleConfig::default();
    let (xs, ys): (VertexSet, VertexSet) = ([0].into(), [1, 2].into());
    let eps = ratio(1, 4);
    assert!(!brute_regular_pair(&xs, &ys, &g, &eps, false, &cfg).unwrap().is_regular());
    assert!(brute_regular_pair(&xs, &ys, &g, &eps, true, &cfg).unwrap().is_regular());
}

#[test]
fn progression_free_maxima_agree_with_exhaustive_verification() {
    let cfg = OracleConfig::default();
    for n in 1..=10 {
        let (size, witness) = max_ap_free(n, &cfg).unwrap();
        assert!(find_progression3(&witness).is_none());
        let report = roth_aux_verify(n, &ratio(1, 1)).unwrap();
        assert_eq!(report.max_progression_free, size, "N = {n}");
        assert_eq!(report.witness, witness, "N = {n}");
    }
}

#[test]
fn progression_free_sequence() {
    let cfg = OracleConfig::default();
    let sizes: Vec<usize> = (1..=14).map(|n| max_ap_free(n, &cfg).unwrap().0).collect();
    assert_eq!(sizes, vec![1, 2, 2, 3, 4, 4, 4, 4, 5, 5, 6, 6, 7, 8]);
    let (_, eight) = max_ap_free(8, &cfg).unwrap();
    assert_eq!(eight, BTreeSet::from([0, 1, 3, 4]));
}
