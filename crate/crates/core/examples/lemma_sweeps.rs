// Structural and lemma sweeps over subgroups of A5 × A5.

use std::sync::Arc;

use invariant_word::group::named;
use invariant_word::structure::{self, Square};
use invariant_word::sweep::SweepMode;
use invariant_word::tuple::Constraint;
use invariant_word::witness::sweeps::{self, PairSetting};
use invariant_word::Ceilings;

pub fn run_example() -> invariant_word::Result<()> {
    let c = Ceilings::default();
    let a5 = Arc::new(named::alternating(5));
    let sq = Square::new(a5.clone(), Constraint::FullPower, &c)?;
    for rep in [
        structure::support(&sq, SweepMode::Exhaustive, &c)?,
        structure::diag_to_full(&sq, &c)?,
        structure::quotient_g(&sq, &c)?,
    ] {
        println!("{}", rep.summary());
    }
    let ps = PairSetting::new(a5, &c)?;
    let mode = SweepMode::Sampled { budget: 200, seed: 0x5eed };
    println!("{}", sweeps::intersection(&ps, mode)?.summary());
    println!("{}", sweeps::shrinkage(&ps, mode)?.summary());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
