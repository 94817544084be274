use std::sync::Arc;

use invariant_word::build::{
    build_exact, build_general, exact_root, general_envelope, predicted_size, ConstructionParams, Polarity,
};
use invariant_word::formula::Formula;
use invariant_word::group::named;
use invariant_word::tuple::{Constraint, TupleSpec};
use invariant_word::verify::{verify_construction, CheckMode};
use invariant_word::word::{
    act_on_tuple, bool_matmul, matrix, omega_size, omega_tuple, truth_table, var_index, var_perm, variable_action,
    word_entry, WordInstance,
};
use invariant_word::{Ceilings, FiniteGroup, GroupTable};
use proptest::prelude::*;

fn params(n: usize, k: usize, d: usize, pol: Polarity) -> ConstructionParams {
    ConstructionParams::new(n, k, d, pol)
}

/// Literal leaves of the flat base formula: `k` literals per path, `n^{k-1}` paths.
fn base_case_size(n: usize, k: usize) -> u64 {
    (k * n.pow(k as u32 - 1)) as u64
}

#[test]
fn oracle_examples() {
    let s3 = named::symmetric(3);
    assert!(WordInstance::new(&s3, vec![0; 4]).unwrap().oracle());
    for g in 0..s3.order() {
        assert!(WordInstance::new(&s3, vec![g, s3.inv(g)]).unwrap().oracle());
    }
    let s2 = named::symmetric(2);
    let t = s2.index_of(&invariant_word::Perm::from_cycles(2, "(1 2)").unwrap()).unwrap();
    let w = WordInstance::new(&s2, vec![t]).unwrap();
    assert!(!w.entry(0, 0));
    assert!(w.entry(1, 0));
    assert!(WordInstance::new(&s2, vec![2]).is_err());
}

#[test]
fn orientation_is_sound_up_to_120() {
    for g in [named::symmetric(4), named::alternating(5), named::symmetric(5)] {
        let mats: Vec<_> = g.elements().iter().map(matrix).collect();
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(bool_matmul(&mats[a], &mats[b]), mats[g.mul(a, b)]);
            }
        }
    }
}

#[test]
fn oracle_agrees_with_matrix_products() {
    let g = named::symmetric(3);
    for w in 0..omega_size(6, 3) as usize {
        let t = omega_tuple(6, 3, w);
        let prod = t.iter().skip(1).fold(matrix(g.element(t[0])), |acc, &h| bool_matmul(&acc, &matrix(g.element(h))));
        for u0 in 0..3 {
            for uk in 0..3 {
                assert_eq!(word_entry(&g, &t, u0, uk), prod[u0][uk]);
            }
        }
    }
}

/// `bits(act_on_tuple(q, h))` is `bits(h) ∘ var_perm(q)` for every `q` and `h`.
fn check_action_on_bits(g: &Arc<GroupTable>, k: usize, constraint: Constraint) {
    let c = Ceilings::default();
    let q = TupleSpec::new(g.clone(), k, constraint).unwrap().enumerate(&c).unwrap();
    let spec = q.spec();
    for qi in 0..q.order() {
        let t = q.tuple(qi);
        let pi = var_perm(spec, &t);
        for w in 0..omega_size(g.order(), k) as usize {
            let h = omega_tuple(g.order(), k, w);
            let x = WordInstance::new(g, h.clone()).unwrap().bits();
            let moved = WordInstance::new(g, act_on_tuple(spec, &t, &h)).unwrap().bits();
            assert!((0..x.len()).all(|v| moved[v] == x[pi[v] as usize]));
        }
    }
}

#[test]
fn variable_actions_match_matrix_actions() {
    let s3 = Arc::new(named::symmetric(3));
    check_action_on_bits(&s3, 2, Constraint::QLeftRight);
    check_action_on_bits(&s3, 3, Constraint::ShiftedDiagonal);
    check_action_on_bits(&Arc::new(named::cyclic(3)), 3, Constraint::FullPower);
}

#[test]
fn identity_and_locality() {
    let g = Arc::new(named::symmetric(3));
    let spec = TupleSpec::new(g.clone(), 3, Constraint::FullPower).unwrap();
    let id: Vec<u32> = (0..27).collect();
    assert_eq!(var_perm(&spec, &[0, 0, 0]), id);
    let moved = var_perm(&spec, &[1, 0, 0]);
    assert!((0..27).all(|v| (v < 9) || moved[v] == v as u32));
    assert!((0..9).any(|v| moved[v] != v as u32));
    let act = variable_action(&spec);
    assert_eq!(act.m, 27);
}

#[test]
fn oracle_is_shifted_diagonal_invariant() {
    let c = Ceilings::default();
    for (g, k) in [(named::symmetric(3), 4), (named::alternating(4), 3), (named::cyclic(5), 4)] {
        let g = Arc::new(g);
        let sd = TupleSpec::new(g.clone(), k, Constraint::ShiftedDiagonal).unwrap().enumerate(&c).unwrap();
        assert!(omega_size(g.order(), k) <= 100_000);
        for qi in 0..sd.order() {
            let t = sd.tuple(qi);
            for w in 0..omega_size(g.order(), k) as usize {
                let h = omega_tuple(g.order(), k, w);
                assert_eq!(word_entry(&g, &act_on_tuple(sd.spec(), &t, &h), 0, 0), word_entry(&g, &h, 0, 0));
            }
        }
    }
}

#[test]
fn exact_sizes() {
    for (n, k, d, size) in [(2, 2, 1, 4u64), (2, 4, 2, 16), (3, 9, 2, 729)] {
        let f = build_exact(&params(n, k, d, Polarity::Sigma)).unwrap();
        assert_eq!(f.size(), size);
        assert_eq!(predicted_size(n, k, d), Some(size as u128));
        assert_eq!(f.depth() as usize, d + 1);
    }
    assert!(build_exact(&params(2, 3, 2, Polarity::Sigma)).is_err());
}

#[test]
fn general_sizes() {
    for n in 2..=4 {
        for d in 1..=3 {
            let f = build_general(&params(n, 1, d, Polarity::Sigma)).unwrap();
            assert_eq!(f, Formula::pos(var_index(n, 0, 0, 0)));
        }
    }
    let f = build_general(&params(2, 3, 1, Polarity::Sigma)).unwrap();
    assert_eq!(f.size(), base_case_size(2, 3));
    assert_eq!(f.size(), 12);
    let f = build_general(&params(2, 3, 2, Polarity::Sigma)).unwrap();
    assert_eq!(general_envelope(2, 3, 2), 48);
    assert!(f.size() <= 48);
    assert_eq!(f.size(), 10);
}

#[test]
fn verify_examples() {
    let s2 = Arc::new(named::symmetric(2));
    let f = build_exact(&params(2, 2, 1, Polarity::Sigma)).unwrap();
    let r = verify_construction(&f, &s2, 2, (0, 0), predicted_size(2, 2, 1), CheckMode::Auto).unwrap();
    assert!(r.all_pass());
    assert_eq!((r.inputs_checked, r.size), (4, 4));
    let f = build_exact(&params(2, 4, 2, Polarity::Pi)).unwrap();
    let r = verify_construction(&f, &s2, 4, (0, 0), predicted_size(2, 4, 2), CheckMode::Auto).unwrap();
    assert!(r.all_pass());
    assert_eq!((r.inputs_checked, r.size), (16, 16));
    let bad = f.flip_literal_at(3).unwrap();
    let r = verify_construction(&bad, &s2, 4, (0, 0), None, CheckMode::Auto).unwrap();
    assert!(!r.semantic_match);
    assert!(r.first_mismatch.is_some());
}

#[test]
fn sampled_mode_is_labelled_and_seeded() {
    let s3 = Arc::new(named::symmetric(3));
    let f = build_exact(&params(3, 4, 2, Polarity::Sigma)).unwrap();
    let mode = CheckMode::Sampled { samples: 500, seed: 9 };
    let a = verify_construction(&f, &s3, 4, (0, 0), None, mode).unwrap();
    let b = verify_construction(&f, &s3, 4, (0, 0), None, mode).unwrap();
    assert_eq!(a.semantic_mode, "sampled");
    assert_eq!(a.inputs_checked, 500);
    assert!(a.all_pass());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn sigma_and_pi_agree() {
    let c = Ceilings::default();
    for (n, k, d) in [(3, 3, 1), (2, 4, 2), (3, 4, 2), (2, 8, 3)] {
        let g = named::symmetric(n);
        let s = build_exact(&params(n, k, d, Polarity::Sigma)).unwrap();
        let p = build_exact(&params(n, k, d, Polarity::Pi)).unwrap();
        assert_eq!(truth_table(&s, &g, k, c.elements).unwrap(), truth_table(&p, &g, k, c.elements).unwrap());
        assert_eq!(s.depth(), p.depth());
        assert_eq!(s.size(), p.size());
        assert_ne!(s, p);
    }
}

#[test]
fn general_construction_over_non_integral_roots() {
    for n in 2..=3 {
        let g = Arc::new(named::symmetric(n));
        for k in [2, 3, 5, 6] {
            for d in 1..=3 {
                if exact_root(k, d).is_some() {
                    continue;
                }
                for pol in [Polarity::Sigma, Polarity::Pi] {
                    let f = build_general(&params(n, k, d, pol)).unwrap();
                    let r = verify_construction(&f, &g, k, (0, 0), None, CheckMode::Auto).unwrap();
                    assert!(r.all_pass(), "n={n} k={k} d={d}");
                    assert!(f.depth() as usize <= d + 1);
                    assert!(f.size() as u128 <= general_envelope(n, k, d));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn constructions_compute_every_entry(
        n in 2usize..=3,
        k in 1usize..=5,
        d in 1usize..=3,
        u0 in 0usize..3,
        uk in 0usize..3,
        pi in any::<bool>(),
    ) {
        let (u0, uk) = (u0 % n, uk % n);
        let g = Arc::new(named::symmetric(n));
        let mut p = params(n, k, d, if pi { Polarity::Pi } else { Polarity::Sigma });
        p.u0 = u0;
        p.uk = uk;
        let f = if exact_root(k, d).is_some() { build_exact(&p).unwrap() } else { build_general(&p).unwrap() };
        let r = verify_construction(&f, &g, k, (u0, uk), None, CheckMode::Exhaustive).unwrap();
        prop_assert!(r.semantic_match && r.invariance);
        if let Some(size) = predicted_size(n, k, d) {
            prop_assert_eq!(f.size() as u128, size);
        }
    }
}
