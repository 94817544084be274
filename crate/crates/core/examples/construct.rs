// Builds Σ and Π word-problem formulas and prints their shape.
//
// `cargo run --example construct`

use invariant_word::build::{build_exact, build_general, predicted_size, ConstructionParams, Polarity};
use invariant_word::formula::text::to_text;

pub fn run_example() -> invariant_word::Result<()> {
    for (n, k, d) in [(2, 4, 2), (3, 9, 2), (2, 8, 3)] {
        for pol in [Polarity::Sigma, Polarity::Pi] {
            let f = build_exact(&ConstructionParams::new(n, k, d, pol))?;
            println!(
                "n={n} k={k} d={d} {pol}: size {} (law {}), depth {}",
                f.size(),
                predicted_size(n, k, d).unwrap(),
                f.depth()
            );
        }
    }

    // k^{1/d} not integral: contiguous blocks of near-equal length
    let mut p = ConstructionParams::new(3, 5, 2, Polarity::Sigma);
    p.u0 = 1;
    let f = build_general(&p)?;
    println!("general n=3 k=5 d=2, entry (2,1): size {}, depth {}", f.size(), f.depth());

    let small = build_exact(&ConstructionParams::new(2, 2, 1, Polarity::Sigma))?;
    println!("{}", to_text(&small));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
