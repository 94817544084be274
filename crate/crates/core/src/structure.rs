//! Sweeps over subgroups of `G × G` for a nonabelian simple `G`: supports,
//! overgroups of the diagonal, and normal subgroups with quotient `G`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::goursat::enumerate_product_subgroups;
use crate::group::{Ceilings, FiniteGroup, GroupTable};
use crate::params::{is_simple, min_faithful_degree};
use crate::subgroup::{self, isomorphisms, join_with, quotient, SubgroupHandle};
use crate::sweep::{SweepMode, WitnessReport};
use crate::tuple::{minimal_support, power_subgroup, Constraint, CoordinateSubgroup, TupleGroup};

/// `G × G` with its Goursat-enumerated subgroups. Falls back to seeded
/// sampling of the list only when the caller asks for it.
pub struct Square {
    pub g: Arc<GroupTable>,
    pub q: TupleGroup,
    pub subs: Vec<SubgroupHandle>,
}

impl Square {
    pub fn new(g: Arc<GroupTable>, constraint: Constraint, ceilings: &Ceilings) -> Result<Square> {
        let q = power_subgroup(g.clone(), 2, constraint, ceilings)?;
        let subs = enumerate_product_subgroups(&q, ceilings)?;
        Ok(Square { g, q, subs })
    }

    /// `{(g, g)}`.
    pub fn diagonal(&self) -> SubgroupHandle {
        let n = self.g.order();
        SubgroupHandle::from_elements(self.q.order(), (0..n).map(|a| a * n + a))
    }

    fn pick(&self, mode: SweepMode) -> Vec<usize> {
        match mode {
            SweepMode::Exhaustive => (0..self.subs.len()).collect(),
            SweepMode::Sampled { budget, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let idx: Vec<usize> = (0..self.subs.len()).collect();
                (0..budget).map(|_| *idx.choose(&mut rng).expect("nonempty")).collect()
            }
        }
    }
}

fn require_simple(g: &GroupTable, ceilings: &Ceilings) -> Result<()> {
    if g.is_abelian() || !is_simple(g, ceilings)? {
        return Err(Error::Precondition("needs a nonabelian simple group".into()));
    }
    Ok(())
}

fn pairs(q: &TupleGroup, h: &SubgroupHandle) -> Vec<(usize, usize)> {
    let n = q.base().order();
    h.elements().map(|e| (e / n + 1, e % n + 1)).collect()
}

/// `[G² : H] < n^m` implies a support of size at most `m`, for every `m`.
pub fn support(sq: &Square, mode: SweepMode, ceilings: &Ceilings) -> Result<WitnessReport> {
    require_simple(&sq.g, ceilings)?;
    let n = min_faithful_degree(&sq.g, ceilings)? as u128;
    let mut rep = WitnessReport::new("support", mode);
    for i in sq.pick(mode) {
        let h = &sq.subs[i];
        let index = (sq.q.order() / h.order()) as u128;
        let mut m = 0u32;
        while n.pow(m) <= index {
            m += 1;
        }
        let supp = minimal_support(&sq.q.subgroup(h))?;
        rep.track_max("max_support", supp.len() as i64);
        rep.record(supp.len() <= m as usize, || {
            json!({"order": h.order(), "index": index, "m": m, "support": supp.iter().map(|c| c + 1).collect::<Vec<_>>()})
        });
    }
    rep.note("subgroups", sq.subs.len());
    rep.note("n", n as u64);
    Ok(rep)
}

/// Every `H` with `Diag < H ≤ G²` is `G²`, and `⟨Diag, x⟩ = G²` for every
/// `x` off the diagonal.
pub fn diag_to_full(sq: &Square, ceilings: &Ceilings) -> Result<WitnessReport> {
    require_simple(&sq.g, ceilings)?;
    let diag = sq.diagonal();
    let mut rep = WitnessReport::new("diag-to-full", SweepMode::Exhaustive);
    let mut above = 0u64;
    for h in sq.subs.iter().filter(|h| diag.is_subgroup_of(h) && **h != diag) {
        above += 1;
        rep.record(h.is_full(), || json!({"order": h.order()}));
    }
    for x in (0..sq.q.order()).filter(|&x| !diag.contains(x)) {
        let j = join_with(&sq.q, &diag, x);
        rep.record(j.is_full(), || json!({"element": pairs(&sq.q, &SubgroupHandle::from_elements(sq.q.order(), [x])), "order": j.order()}));
    }
    rep.note("proper_overgroups", above);
    Ok(rep)
}

/// Normal `N ◁ G²` with `G²/N ≅ G` have exactly one coordinate whose
/// restriction is trivial.
pub fn quotient_g(sq: &Square, ceilings: &Ceilings) -> Result<WitnessReport> {
    require_simple(&sq.g, ceilings)?;
    let full = SubgroupHandle::full(sq.q.order());
    let mut rep = WitnessReport::new("quotient-g", SweepMode::Exhaustive);
    let mut normals = 0u64;
    let gt = subgroup::TableGroup::of(sq.g.as_ref());
    for nn in sq.subs.iter().filter(|nn| nn.order() * sq.g.order() == sq.q.order()) {
        if !subgroup::is_normal_in(&sq.q, nn, &full) {
            continue;
        }
        let quo = quotient(&sq.q, &full, nn);
        if isomorphisms(&quo.group, &gt).is_empty() {
            continue;
        }
        normals += 1;
        let view = sq.q.subgroup(nn);
        let mut trivial = Vec::new();
        for j in 0..2 {
            if view.restriction(&[j])?.len() == 1 {
                trivial.push(j + 1);
            }
        }
        rep.record(trivial.len() == 1, || json!({"order": nn.order(), "trivial_coordinates": trivial}));
    }
    rep.note("normal_with_quotient_g", normals);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn a5_structure_sweeps() {
        let c = Ceilings::default();
        let sq = Square::new(Arc::new(named::alternating(5)), Constraint::FullPower, &c).unwrap();
        assert_eq!(sq.subs.len(), 8381);
        let q = quotient_g(&sq, &c).unwrap();
        assert!(q.ok());
        assert_eq!(q.instances, 2);
        let d = diag_to_full(&sq, &c).unwrap();
        assert!(d.ok(), "{}", d.summary());
        assert_eq!(d.extremal["proper_overgroups"], 1);
    }

    #[test]
    fn abelian_groups_are_refused() {
        let c = Ceilings::default();
        let sq = Square::new(Arc::new(named::cyclic(5)), Constraint::FullPower, &c).unwrap();
        assert!(support(&sq, SweepMode::Exhaustive, &c).is_err());
    }
}
