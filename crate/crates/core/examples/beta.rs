// Bounds on the recursive complexity measure for the zero-sum subgroup of
// `C_2^2`, with the good tuple behind the upper end.

use std::sync::Arc;

use invariant_word::fp::{mu_p, FpSubspace};
use invariant_word::group::named;
use invariant_word::tuple::{Constraint, TupleSpec};
use invariant_word::witness::beta::{check_good_tuple, BetaEngine, BetaInterval, DEFAULT_MAX_SUBGROUPS};
use invariant_word::{Ceilings, FiniteGroup, SubgroupHandle};

pub fn run_example() -> invariant_word::Result<()> {
    let c = Ceilings::default();
    let g = Arc::new(named::cyclic(2));
    let q = TupleSpec::new(g.clone(), 2, Constraint::FullPower)?.enumerate(&c)?;
    let zs = TupleSpec::new(g, 2, Constraint::ZeroSum)?;
    let h = SubgroupHandle::from_elements(q.order(), (0..q.order()).filter(|&x| zs.contains_tuple(&q.tuple(x))));
    let mu = mu_p(&FpSubspace::zero_sum(2, 2)).mu;
    let mut engine = BetaEngine::new(q, 4, &c, DEFAULT_MAX_SUBGROUPS)?;
    println!("{} subgroups, regular action: {}", engine.subgroups().len(), engine.is_regular());
    for d in 0..=3 {
        let v = engine.evaluate(&h, &h, d)?;
        let i = BetaInterval::new(&v, 4, mu, 2);
        let good = !v.witness.is_empty() && check_good_tuple(&engine, &h, &h, &v.witness).all();
        println!("d={d}: [{:.4}, {}], witness of {} components, good {good}", i.lo, i.hi, v.witness.len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
