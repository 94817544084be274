use invariant_word::fp::sweeps;
use invariant_word::fp::zq::{prime_power_bound, vh_extract, ZqPower};
use invariant_word::fp::{all_subspaces, min_weight_gap, mu_p, shrinkage_t_search, FpSubspace};
use invariant_word::sweep::SweepMode;
use invariant_word::{Ceilings, FiniteGroup, SubgroupHandle};
use proptest::prelude::*;

#[test]
fn perp_is_an_involution_with_complementary_dimension() {
    for p in [2u32, 3, 5] {
        for k in 1..=5usize {
            if p == 5 && k > 3 {
                continue;
            }
            for v in all_subspaces(p, k) {
                let vp = v.perp();
                assert_eq!(v.dim() + vp.dim(), k);
                assert_eq!(vp.perp(), v);
            }
        }
    }
}

#[test]
fn gap_is_at_most_k_and_extremal_for_zero_sum() {
    for k in 2..=5 {
        let g = min_weight_gap(&FpSubspace::zero_sum(2, k), &FpSubspace::full(2, k)).unwrap();
        assert_eq!(g.weight, k);
        assert_eq!(g.witness, vec![1; k]);
    }
    for v in all_subspaces(3, 3) {
        assert!(mu_p(&v).mu <= 3);
    }
}

#[test]
fn shrinkage_examples() {
    let h = FpSubspace::zero_sum(2, 3);
    let w = FpSubspace::full(2, 3);
    let t = shrinkage_t_search(&h, &w, &h).unwrap().unwrap();
    assert_eq!((t.t, t.m), (w.clone(), 1));
    let t = shrinkage_t_search(&h, &w, &FpSubspace::zero(2, 3)).unwrap().unwrap();
    assert_eq!(t.t.dim(), 1);
    assert!(t.gap * 3 >= 3);
}

#[test]
fn shrinkage_p3_k4_sampled() {
    let r = sweeps::shrinkage(3, 4, SweepMode::Sampled { budget: 2000, seed: 7 }).unwrap();
    assert!(r.ok(), "{}", r.summary());
}

#[test]
fn exhaustive_sweeps() {
    for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let r = sweeps::intersection(p, k, SweepMode::Exhaustive);
        assert!(r.ok(), "{}", r.summary());
    }
    for k in 1..=5 {
        let r = sweeps::shrinkage(2, k, SweepMode::Exhaustive).unwrap();
        assert!(r.ok(), "{}", r.summary());
    }
    for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)] {
        let r = sweeps::perp_unique(p, k, SweepMode::Exhaustive).unwrap();
        assert!(r.ok(), "{}", r.summary());
    }
}

#[test]
fn dim_bound_for_prime_powers() {
    let c = Ceilings::default();
    for (q, k) in [(4, 1), (4, 2), (4, 3), (8, 2), (9, 2), (8, 3), (9, 3)] {
        let r = sweeps::dim_bound(q, k, &c).unwrap();
        assert!(r.ok(), "{}", r.summary());
    }
}

#[test]
fn literal_mu_is_at_most_one() {
    let c = Ceilings::default();
    for (q, k) in [(2, 3), (4, 2), (3, 3), (2, 4)] {
        let r = sweeps::literal_mu(q, k, &c).unwrap();
        assert!(r.ok(), "{}", r.summary());
    }
}

#[test]
fn prime_power_bound_cases() {
    let c = Ceilings::default();
    let g = ZqPower::new(4, 3, &c).unwrap();
    let full = SubgroupHandle::full(g.order());
    let vh = vh_extract(&g, &full);
    assert!(vh.is_full());
    // mu = 1 makes the exponent vanish
    let h = g.zero_sum();
    let w = FpSubspace::full(2, 3);
    let b = prime_power_bound(&g, &h, &w, 3).unwrap();
    assert_eq!(b.mu, 3);
    assert!(prime_power_bound(&g, &h, &w, 0).is_err());
}

proptest! {
    #[test]
    fn span_is_order_independent(vs in prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..5)) {
        let a = FpSubspace::span(3, 4, vs.clone()).unwrap();
        let mut rev = vs.clone();
        rev.reverse();
        let b = FpSubspace::span(3, 4, rev).unwrap();
        prop_assert_eq!(&a, &b);
        for v in &vs {
            prop_assert!(a.contains(v));
        }
    }

    #[test]
    fn intersection_lemma_on_random_pairs(seed in 0u64..1000) {
        let r = sweeps::intersection(3, 3, SweepMode::Sampled { budget: 20, seed });
        prop_assert!(r.ok());
    }
}
