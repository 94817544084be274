// Edge sets and μ for subgroups of the left-right group of A5.

use std::sync::Arc;

use invariant_word::group::named;
use invariant_word::tuple::{Constraint, TupleSpec};
use invariant_word::witness::{edge_set, mu_nonabelian};

pub fn run_example() -> invariant_word::Result<()> {
    let g = Arc::new(named::alternating(5));
    for k in 2..=5 {
        let sd = TupleSpec::new(g.clone(), k, Constraint::ShiftedDiagonal)?;
        let q = TupleSpec::new(g.clone(), k, Constraint::QLeftRight)?;
        println!(
            "k={k}: E(image of G^(k-1)) = {:?}, mu = {}, mu(Q, Q) = {}",
            edge_set(&sd)?.edge_list(),
            mu_nonabelian(&sd, &sd, q.order_u128())?,
            mu_nonabelian(&q, &q, q.order_u128())?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
