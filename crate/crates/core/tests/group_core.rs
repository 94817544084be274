use std::collections::BTreeSet;
use std::sync::Arc;

use invariant_word::goursat::{enumerate_product_subgroups, goursat_decompose, goursat_reconstruct};
use invariant_word::group::{generate_group, named};
use invariant_word::params::{is_simple, min_faithful_degree, q_param};
use invariant_word::subgroup::{self, closure, enumerate_subgroups, orbit_and_stabilizer};
use invariant_word::tuple::{minimal_support, power_subgroup, projection, restriction, Constraint, CoordinateSubgroup, TupleSpec};
use invariant_word::{Ceilings, Error, FiniteGroup, GroupTable, Perm, SubgroupHandle};
use proptest::prelude::*;

fn perm(n: usize, s: &str) -> Perm {
    Perm::from_cycles(n, s).unwrap()
}

/// Every subset containing 1 and closed under products; small groups only.
fn brute_force_subgroups<G: FiniteGroup>(g: &G) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    assert!(n <= 16);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let els: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if els.iter().all(|&a| els.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1)) {
            out.insert(els);
        }
    }
    out
}

fn as_sets(subs: &[SubgroupHandle]) -> BTreeSet<Vec<usize>> {
    subs.iter().map(|s| s.elements().collect()).collect()
}

#[test]
fn generated_orders() {
    let c = Ceilings::default();
    assert_eq!(generate_group(2, vec![perm(2, "(1 2)")], &c).unwrap().order(), 2);
    assert_eq!(generate_group(3, vec![perm(3, "(1 2 3)"), perm(3, "(1 2)")], &c).unwrap().order(), 6);
    assert_eq!(generate_group(5, vec![perm(5, "(1 2 3 4 5)"), perm(5, "(3 4 5)")], &c).unwrap().order(), 60);
    assert_eq!(generate_group(4, vec![], &c).unwrap().order(), 1);
}

#[test]
fn generation_errors() {
    let c = Ceilings::default();
    assert!(matches!(
        generate_group(3, vec![perm(4, "(1 2)")], &c),
        Err(Error::DegreeMismatch { .. })
    ));
    let tight = Ceilings { elements: 10, ..c };
    assert!(matches!(
        generate_group(4, vec![perm(4, "(1 2 3 4)"), perm(4, "(1 2)")], &tight),
        Err(Error::Ceiling { .. })
    ));
}

#[test]
fn power_subgroup_orders() {
    let c = Ceilings::default();
    let c2 = Arc::new(named::cyclic(2));
    let c3 = Arc::new(named::cyclic(3));
    assert_eq!(power_subgroup(c2.clone(), 3, Constraint::ZeroSum, &c).unwrap().order(), 4);
    let sd = power_subgroup(c3.clone(), 2, Constraint::ShiftedDiagonal, &c).unwrap();
    assert_eq!((sd.order(), sd.arity()), (3, 4));
    // oracle: tuples (1, g, g, 1)
    let expected: BTreeSet<Vec<u32>> = (0..3).map(|g| vec![0, g, g, 0]).collect();
    let got: BTreeSet<Vec<u32>> = (0..sd.order()).map(|i| sd.tuple(i)).collect();
    assert_eq!(got, expected);
    assert_eq!(power_subgroup(c2, 2, Constraint::QLeftRight, &c).unwrap().order(), 4);
    let a5 = Arc::new(named::alternating(5));
    assert!(TupleSpec::new(a5, 3, Constraint::ZeroSum).is_err());
}

#[test]
fn orbits_and_stabilizers() {
    let s3 = named::symmetric(3);
    let (orbit, stab) = orbit_and_stabilizer(&s3, |g, x| s3.act(g, x), 0);
    assert_eq!(orbit, BTreeSet::from([0, 1, 2]));
    assert_eq!(stab.order(), 2);

    let trivial = named::symmetric(1);
    let (orbit, stab) = orbit_and_stabilizer(&trivial, |g, x| trivial.act(g, x), 0);
    assert_eq!(orbit.len(), 1);
    assert!(stab.is_full());

    let c = Ceilings::default();
    let zs = power_subgroup(Arc::new(named::cyclic(2)), 3, Constraint::ZeroSum, &c).unwrap();
    let (orbit, stab) = orbit_and_stabilizer(&zs, |_, x| x, 7);
    assert_eq!((orbit.len(), stab.order()), (1, 4));
}

#[test]
fn subgroup_counts_match_brute_force() {
    let c = Ceilings::default();
    let c2 = named::cyclic(2);
    let v4 = power_subgroup(Arc::new(c2.clone()), 2, Constraint::FullPower, &c).unwrap();
    let s3 = named::symmetric(3);
    for (subs, oracle, count) in [
        (enumerate_subgroups(&c2, &c).unwrap(), brute_force_subgroups(&c2), 2),
        (enumerate_subgroups(&v4, &c).unwrap(), brute_force_subgroups(&v4), 5),
        (enumerate_subgroups(&s3, &c).unwrap(), brute_force_subgroups(&s3), 6),
    ] {
        assert_eq!(subs.len(), count);
        assert_eq!(as_sets(&subs), oracle);
    }
}

#[test]
fn s4_subgroups_match_two_generated_closures() {
    // every subgroup of S4 is generated by two elements
    let c = Ceilings::default();
    let s4 = named::symmetric(4);
    let subs = enumerate_subgroups(&s4, &c).unwrap();
    let mut oracle = BTreeSet::new();
    for a in 0..24 {
        for b in a..24 {
            oracle.insert(closure(&s4, &[a, b]).elements().collect::<Vec<_>>());
        }
    }
    assert_eq!(subs.len(), 30);
    assert_eq!(as_sets(&subs), oracle);
}

#[test]
fn restrictions_and_projections() {
    let c = Ceilings::default();
    let g = Arc::new(named::symmetric(3));
    let sq = power_subgroup(g.clone(), 2, Constraint::FullPower, &c).unwrap();
    let diag = SubgroupHandle::from_elements(sq.order(), (0..6).map(|a| sq.index_of_tuple(&[a, a]).unwrap()));
    let full = SubgroupHandle::full(sq.order());

    let (_, r) = restriction(&sq.subgroup(&diag), &g, &[0], &c).unwrap();
    assert!(r.is_trivial());
    let (_, r) = restriction(&sq.subgroup(&full), &g, &[0], &c).unwrap();
    assert!(r.is_full());
    let (_, p) = projection(&sq.subgroup(&diag), &g, &[0], &c).unwrap();
    assert!(p.is_full());
    let trivial = SubgroupHandle::trivial(sq.order());
    let (_, p) = projection(&sq.subgroup(&trivial), &g, &[1], &c).unwrap();
    assert!(p.is_trivial());

    let c2 = Arc::new(named::cyclic(2));
    let zs = TupleSpec::new(c2, 3, Constraint::ZeroSum).unwrap();
    let got = zs.restriction(&[0, 1]).unwrap();
    assert_eq!(got, BTreeSet::from([vec![0, 0], vec![1, 1]]));
    let c3 = Arc::new(named::cyclic(3));
    let zs3 = TupleSpec::new(c3, 3, Constraint::ZeroSum).unwrap();
    assert_eq!(zs3.projection(&[0, 1]).unwrap().len(), 9);
}

#[test]
fn goursat_examples() {
    let c = Ceilings::default();
    let g = Arc::new(named::symmetric(3));
    let sq = power_subgroup(g, 2, Constraint::FullPower, &c).unwrap();
    let diag = SubgroupHandle::from_elements(36, (0..6).map(|a| a * 6 + a));
    let t = goursat_decompose(&sq, &diag).unwrap();
    assert!(t.m.is_trivial() && t.n.is_trivial());
    assert!(t.theta.iter().all(|(a, b)| a == b));

    let t = goursat_decompose(&sq, &SubgroupHandle::full(36)).unwrap();
    assert!(t.m.is_full() && t.n.is_full());
    assert_eq!(t.theta.len(), 1);

    let c3 = Arc::new(named::cyclic(3));
    let sq3 = power_subgroup(c3.clone(), 2, Constraint::FullPower, &c).unwrap();
    let inv = SubgroupHandle::from_elements(9, (0..3).map(|a| a * 3 + c3.inv(a)));
    let t = goursat_decompose(&sq3, &inv).unwrap();
    assert!(t.m.is_trivial() && t.n.is_trivial());
    assert!(t.theta.iter().all(|(&a, &b)| b == c3.inv(a)));
}

#[test]
fn goursat_round_trip_on_every_subgroup() {
    let c = Ceilings::default();
    for g in [named::symmetric(3), named::cyclic(4), named::alternating(4)] {
        let sq = power_subgroup(Arc::new(g), 2, Constraint::FullPower, &c).unwrap();
        let subs = enumerate_product_subgroups(&sq, &c).unwrap();
        assert_eq!(as_sets(&subs), as_sets(&enumerate_subgroups(&sq, &c).unwrap()));
        for k in &subs {
            assert!(subgroup::is_subgroup(&sq, k));
            let t = goursat_decompose(&sq, k).unwrap();
            assert_eq!(&goursat_reconstruct(&sq, &t).unwrap(), k);
        }
    }
}

#[test]
fn minimal_supports() {
    let c = Ceilings::default();
    let g = Arc::new(named::symmetric(3));
    let sq = power_subgroup(g, 2, Constraint::FullPower, &c).unwrap();
    let full = SubgroupHandle::full(36);
    let diag = SubgroupHandle::from_elements(36, (0..6).map(|a| a * 6 + a));
    let left = SubgroupHandle::from_elements(36, (0..6).map(|a| a * 6));
    assert_eq!(minimal_support(&sq.subgroup(&full)).unwrap(), Vec::<usize>::new());
    assert_eq!(minimal_support(&sq.subgroup(&diag)).unwrap(), vec![0, 1]);
    assert_eq!(minimal_support(&sq.subgroup(&left)).unwrap(), vec![1]);
}

fn element_orders(g: &GroupTable) -> BTreeSet<usize> {
    g.elements().iter().map(|p| p.order()).collect()
}

fn is_prime_power(n: usize) -> bool {
    (2..=n).find(|p| n % p == 0).is_some_and(|p| {
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        m == 1
    })
}

#[test]
fn group_parameters() {
    let c = Ceilings::default();
    let s5 = named::symmetric(5);
    let gl = named::gl2(3);
    assert_eq!(element_orders(&s5), BTreeSet::from([1, 2, 3, 4, 5, 6]));
    assert_eq!(gl.order(), 168);
    for g in [named::cyclic(2), s5, gl] {
        let oracle = element_orders(&g).into_iter().filter(|&o| is_prime_power(o)).max().unwrap();
        assert_eq!(q_param(&g), oracle);
    }
    assert_eq!(q_param(&named::gl2(3)), 7);

    assert_eq!(min_faithful_degree(&named::alternating(5), &c).unwrap(), 5);
    assert_eq!(min_faithful_degree(&named::cyclic(5), &c).unwrap(), 5);
    assert_eq!(min_faithful_degree(&named::cyclic(7), &c).unwrap(), 7);
    assert!(min_faithful_degree(&named::symmetric(3), &c).is_err());
    assert!(!is_simple(&named::alternating(4), &c).unwrap());
    for g in [named::alternating(5), named::gl2(3)] {
        assert!(is_simple(&g, &c).unwrap());
        let m = min_faithful_degree(&g, &c).unwrap();
        assert!((m * m) as f64 <= g.order() as f64);
    }
    assert_eq!(min_faithful_degree(&named::gl2(3), &c).unwrap(), 7);
}

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_sound(gens in prop::collection::vec(arb_perm(5), 0..3)) {
        let g = generate_group(5, gens.clone(), &Ceilings::default()).unwrap();
        for a in g.elements() {
            prop_assert!(g.contains(&a.inverse()));
            for b in g.elements() {
                prop_assert!(g.contains(&a.compose(b)));
            }
        }
        for x in &gens {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn orbit_stabilizer_counts(gens in prop::collection::vec(arb_perm(5), 1..3), point in 0usize..5) {
        let g = generate_group(5, gens, &Ceilings::default()).unwrap();
        let (orbit, stab) = orbit_and_stabilizer(&g, |e, x| g.act(e, x), point);
        prop_assert_eq!(orbit.len() * stab.order(), g.order());
        prop_assert!(subgroup::is_subgroup(&g, &stab));
    }

    #[test]
    fn composition_applies_right_first(a in arb_perm(6), b in arb_perm(6), x in 0usize..6) {
        prop_assert_eq!(a.compose(&b).apply(x), a.apply(b.apply(x)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
    }
}
