use std::sync::Arc;

use invariant_word::build::{build_exact, ConstructionParams, Polarity};
use invariant_word::formula::action::{is_invariant, semantic_stabilizer, syntactic_stabilizer, VarAction};
use invariant_word::formula::text::{parse, to_text};
use invariant_word::formula::Formula;
use invariant_word::group::named;
use invariant_word::tuple::{power_subgroup, Constraint};
use invariant_word::witness::circulant_reduction;
use invariant_word::word;
use invariant_word::{Ceilings, FiniteGroup, SubgroupHandle};
use proptest::prelude::*;

fn x(i: u32) -> Formula {
    Formula::pos(i)
}

fn nx(i: u32) -> Formula {
    Formula::neg(i)
}

fn assignments(m: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u32 << m).map(move |w| (0..m).map(|i| w >> i & 1 == 1).collect())
}

#[test]
fn canonical_identity() {
    assert_eq!(Formula::or(vec![x(0), x(1)]), Formula::or(vec![x(1), x(0)]));
    assert_ne!(
        Formula::maj(vec![x(0), x(0), x(1)]).canonical_bytes(),
        Formula::maj(vec![x(0), x(1)]).canonical_bytes()
    );
    assert_eq!(
        Formula::and(vec![x(0), Formula::or(vec![x(1), x(2)])]).canonical_bytes(),
        Formula::and(vec![Formula::or(vec![x(2), x(1)]), x(0)]).canonical_bytes()
    );
    assert_ne!(x(0), nx(0));
    assert_ne!(Formula::and(vec![x(0), x(1)]), Formula::or(vec![x(0), x(1)]));
}

#[test]
fn evaluation_examples() {
    let one = Formula::constant(true);
    for a in assignments(2) {
        assert!(one.evaluate(&a).unwrap());
        assert!(!Formula::and(vec![x(0), nx(0)]).evaluate(&a).unwrap());
    }
    let m = Formula::maj(vec![Formula::constant(true), x(0), x(0)]);
    assert!(!m.evaluate(&[false]).unwrap());
    assert!(m.evaluate(&[true]).unwrap());
    // strict majority: a tie is 0
    let tie = Formula::maj(vec![x(0), x(1)]);
    assert!(!tie.evaluate(&[true, false]).unwrap());
    assert!(tie.evaluate(&[true, true]).unwrap());
    assert!(x(3).evaluate(&[true, false]).is_err());
}

#[test]
fn size_and_depth() {
    let f = Formula::and(vec![x(0), Formula::or(vec![nx(1), Formula::constant(false)]), x(0)]);
    assert_eq!(f.size(), 3);
    assert_eq!(f.depth(), 2);
    assert_eq!(x(0).depth(), 0);
    assert_eq!(Formula::constant(true).size(), 0);
}

#[test]
fn action_examples() {
    let id = [0u32, 1, 2];
    let swap = [1u32, 0, 2];
    let f = Formula::and(vec![x(0), Formula::or(vec![x(1), nx(2)])]);
    assert_eq!(f.act(&id), f);
    let sym = Formula::or(vec![x(0), x(1)]);
    assert_eq!(sym.act(&swap), sym);
    let g = Formula::and(vec![x(0), nx(1)]);
    assert_eq!(g.act(&swap), Formula::and(vec![x(1), nx(0)]));
}

#[test]
fn invariance_examples() {
    let maj = Formula::maj((0..4).map(x).collect());
    let cyc = VarAction::new(4, vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).unwrap();
    assert!(is_invariant(&maj, &cyc));
    let swap = VarAction::new(2, vec![vec![1, 0]]).unwrap();
    assert!(!is_invariant(&x(0), &swap));
    assert!(VarAction::new(2, vec![vec![0, 0]]).is_err());

    let c = Ceilings::default();
    let g = Arc::new(named::symmetric(3));
    for (k, d) in [(2, 1), (4, 2)] {
        let f = build_exact(&ConstructionParams::new(3, k, d, Polarity::Pi)).unwrap();
        let sd = power_subgroup(g.clone(), k, Constraint::ShiftedDiagonal, &c).unwrap();
        let act = word::variable_action(sd.spec());
        assert!(is_invariant(&f, &act));
    }
}

#[test]
fn stabilizers_under_the_swap() {
    let c = Ceilings::default();
    let s2 = named::symmetric(2);
    let perm_of = |e: usize| s2.element(e).images().to_vec();
    let omega: Vec<Vec<bool>> = assignments(2).collect();
    let h = syntactic_stabilizer(&x(0), &s2, &perm_of, &c).unwrap();
    assert!(h.is_trivial());
    let one = Formula::constant(true);
    assert!(syntactic_stabilizer(&one, &s2, &perm_of, &c).unwrap().is_full());
    assert!(semantic_stabilizer(&one, &s2, &perm_of, &omega, &c).unwrap().is_full());
    // Ω not closed under the swap
    let lopsided = vec![vec![true, false], vec![false, false]];
    assert!(semantic_stabilizer(&x(0), &s2, &perm_of, &lopsided, &c).is_err());
}

#[test]
fn stabilizers_of_the_c2_construction() {
    let c = Ceilings::default();
    let g = Arc::new(named::cyclic(2));
    let q = power_subgroup(g, 2, Constraint::FullPower, &c).unwrap();
    let zero_sum = SubgroupHandle::from_elements(4, (0..4).filter(|&e| {
        let t = q.tuple(e);
        t[0] == t[1]
    }));
    let f = build_exact(&ConstructionParams::new(2, 2, 1, Polarity::Sigma)).unwrap();
    // the raw tree only sees the left action after its literals are put in
    // circulant form `M_{i,a-b,0}`
    let reduced = circulant_reduction(&f, 2);
    assert!(word::syntactic_stabilizer(&f, &q).is_subgroup_of(&zero_sum));
    assert_eq!(word::syntactic_stabilizer(&reduced, &q), zero_sum);
    assert_eq!(word::semantic_stabilizer(&f, &q, c.elements).unwrap(), zero_sum);
    assert_eq!(word::semantic_stabilizer(&reduced, &q, c.elements).unwrap(), zero_sum);

    let padded = Formula::or(vec![Formula::constant(true), reduced]);
    assert_eq!(word::syntactic_stabilizer(&padded, &q), zero_sum);
    assert!(word::semantic_stabilizer(&padded, &q, c.elements).unwrap().is_full());
    let one = Formula::constant(true);
    assert!(word::syntactic_stabilizer(&one, &q).is_full());
}

#[test]
fn text_format() {
    let f = parse("(and x:1 (or !x:3 x:2) (maj 0 1 x:2))").unwrap();
    assert_eq!(f.size(), 4);
    assert_eq!(parse(&to_text(&f)).unwrap(), f);
    assert_eq!(to_text(&parse("(or x:2 x:1)").unwrap()), to_text(&parse("(or x:1 x:2)").unwrap()));
    for bad in ["(and x:1", "x:0", "(nand x:1)", "y:1", ")"] {
        assert!(parse(bad).is_err(), "{bad}");
    }
}

fn arb_formula(m: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => any::<bool>().prop_map(Formula::constant),
        6 => (0..m, any::<bool>()).prop_map(|(v, n)| Formula::lit(v, n)),
    ];
    leaf.prop_recursive(4, 40, 4, |inner| {
        (0..3u8, prop::collection::vec(inner, 1..4)).prop_map(|(op, kids)| match op {
            0 => Formula::and(kids),
            1 => Formula::or(kids),
            _ => Formula::maj(kids),
        })
    })
}

fn arb_perm(m: u32) -> impl Strategy<Value = Vec<u32>> {
    Just((0..m).collect::<Vec<u32>>()).prop_shuffle()
}

fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
    q.iter().map(|&i| p[i as usize]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn action_is_a_homomorphism(f in arb_formula(6), p in arb_perm(6), q in arb_perm(6)) {
        prop_assert_eq!(f.act(&compose(&p, &q)), f.act(&q).act(&p));
        let id: Vec<u32> = (0..6).collect();
        prop_assert_eq!(f.act(&id), f.clone());
    }

    #[test]
    fn action_keeps_size_and_depth(f in arb_formula(6), p in arb_perm(6)) {
        let g = f.act(&p);
        prop_assert_eq!(g.size(), f.size());
        prop_assert_eq!(g.depth(), f.depth());
    }

    #[test]
    fn action_matches_semantics((m, f, pi) in (1u32..=8).prop_flat_map(|m| (Just(m), arb_formula(m), arb_perm(m)))) {
        let g = f.act(&pi);
        for x in assignments(m as usize) {
            let x_pi: Vec<bool> = (0..m as usize).map(|i| x[pi[i] as usize]).collect();
            prop_assert_eq!(g.evaluate(&x).unwrap(), f.evaluate(&x_pi).unwrap());
        }
    }

    #[test]
    fn text_round_trip(f in arb_formula(8)) {
        prop_assert_eq!(parse(&to_text(&f)).unwrap(), f);
    }

    #[test]
    fn dual_negates(f in arb_formula(4)) {
        for x in assignments(4) {
            prop_assert_eq!(f.dual().evaluate(&x).unwrap(), !f.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn syntactic_within_semantic(f in arb_formula(3)) {
        let c = Ceilings::default();
        let s3 = named::symmetric(3);
        let perm_of = |e: usize| s3.element(e).images().to_vec();
        let omega: Vec<Vec<bool>> = assignments(3).collect();
        let syn = syntactic_stabilizer(&f, &s3, &perm_of, &c).unwrap();
        let sem = semantic_stabilizer(&f, &s3, &perm_of, &omega, &c).unwrap();
        prop_assert!(syn.is_subgroup_of(&sem));
        prop_assert!(invariant_word::subgroup::is_subgroup(&s3, &syn));
        prop_assert_eq!(s3.order() % syn.order(), 0);
    }
}
