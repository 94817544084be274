// Checks constructions against the word oracle and the shifted-diagonal
// action, then shows a flipped literal being caught.

use std::sync::Arc;

use invariant_word::build::{build_exact, predicted_size, ConstructionParams, Polarity};
use invariant_word::group::named;
use invariant_word::verify::{verify_construction, CheckMode};

pub fn run_example() -> invariant_word::Result<()> {
    let s3 = Arc::new(named::symmetric(3));
    let f = build_exact(&ConstructionParams::new(3, 4, 2, Polarity::Pi))?;
    let r = verify_construction(&f, &s3, 4, (0, 0), predicted_size(3, 4, 2), CheckMode::Auto)?;
    println!(
        "S3 k=4 d=2: {} inputs ({}), match {}, invariant {}, size {}",
        r.inputs_checked, r.semantic_mode, r.semantic_match, r.invariance, r.size
    );

    // |S3|^9 is past the exhaustive limit, so this one samples
    let f = build_exact(&ConstructionParams::new(3, 9, 2, Polarity::Sigma))?;
    let r = verify_construction(&f, &s3, 9, (0, 0), None, CheckMode::Sampled { samples: 2000, seed: 1 })?;
    println!("S3 k=9 d=2: {} {} inputs, all pass {}", r.semantic_mode, r.inputs_checked, r.all_pass());

    let bad = f.flip_literal_at(100)?;
    let r = verify_construction(&bad, &s3, 9, (0, 0), None, CheckMode::Sampled { samples: 20000, seed: 1 })?;
    println!("flipped literal 100: {} mismatches, first at {:?}", r.mismatches, r.first_mismatch);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
