// Lower bounds certified from a formula's own stabilizers.

use std::sync::Arc;

use invariant_word::build::{build_exact, ConstructionParams, Polarity};
use invariant_word::group::named;
use invariant_word::witness::framework_check;
use invariant_word::Ceilings;

pub fn run_example() -> invariant_word::Result<()> {
    let c = Ceilings::default();
    let cases = [(named::cyclic(3), 4, 2), (named::cyclic(2), 9, 2), (named::alternating(5), 2, 1)];
    for (g, k, d) in cases {
        let n = g.degree();
        let g = Arc::new(g);
        let f = build_exact(&ConstructionParams::new(n, k, d, Polarity::Sigma))?;
        let r = framework_check(&f, &g, k, Some(d), &c)?;
        println!(
            "{:?} n={n} k={k} d={d}: mu {} c {} |H| {} of {}; bound {:.3} at depth {}, {:?} at d; size {}, holds {}",
            r.setting, r.mu, r.c, r.h_order, r.q_order, r.certified_bound, r.depth, r.param_bound, r.size, r.holds
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
