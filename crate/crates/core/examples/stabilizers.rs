// Syntactic vs semantic stabilizers in the left-right group.

use std::sync::Arc;

use invariant_word::build::{build_exact, ConstructionParams, Polarity};
use invariant_word::formula::Formula;
use invariant_word::group::named;
use invariant_word::tuple::{Constraint, TupleSpec};
use invariant_word::word::{semantic_stabilizer, syntactic_stabilizer};
use invariant_word::{Ceilings, FiniteGroup};

pub fn run_example() -> invariant_word::Result<()> {
    let c = Ceilings::default();
    let g = Arc::new(named::symmetric(3));
    let q = TupleSpec::new(g, 2, Constraint::QLeftRight)?.enumerate(&c)?;
    let psi = build_exact(&ConstructionParams::new(3, 2, 1, Polarity::Sigma))?;
    let padded = Formula::or(vec![Formula::constant(true), psi.clone()]);
    for (name, f) in [("psi", &psi), ("or(1, psi)", &padded)] {
        let h = syntactic_stabilizer(f, &q);
        let k = semantic_stabilizer(f, &q, c.elements)?;
        println!("{name}: |Q| = {}, |H| = {}, |K| = {}", q.order(), h.order(), k.order());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
