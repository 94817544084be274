// Subspaces of F_p^k: μ_p, perps, and the exhaustive sweeps.

use invariant_word::fp::{mu_p, sweeps, FpSubspace};
use invariant_word::group::Ceilings;
use invariant_word::sweep::SweepMode;

pub fn run_example() -> invariant_word::Result<()> {
    for p in [2, 3] {
        for k in 2..=5 {
            let v = FpSubspace::zero_sum(p, k);
            let w = mu_p(&v);
            println!("p={p} k={k}: dim {} perp dim {}, mu {}, witness {:?}", v.dim(), v.perp().dim(), w.mu, w.witness);
        }
    }
    let v = FpSubspace::span(3, 4, vec![vec![1, 1, 0, 0], vec![0, 0, 1, 2]])?;
    println!("span of two vectors in F_3^4: mu {}", mu_p(&v).mu);

    let c = Ceilings::default();
    let ex = SweepMode::Exhaustive;
    for rep in [
        sweeps::intersection(2, 3, ex),
        sweeps::shrinkage(2, 3, ex)?,
        sweeps::perp_unique(3, 3, ex)?,
        sweeps::dim_bound(4, 2, &c)?,
        sweeps::literal_mu(4, 2, &c)?,
    ] {
        println!("{}", rep.summary());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
