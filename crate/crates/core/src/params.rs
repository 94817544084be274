//! Group parameters: minimal faithful degree of a simple group, the largest
//! cyclic prime-power subgroup, and simplicity by brute force.

use crate::error::{Error, Result};
use crate::group::{Ceilings, FiniteGroup, GroupTable};
use crate::subgroup::{self, SubgroupHandle};

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `Some(p)` when `n = p^t` with `t ≥ 1`.
pub fn prime_power_base(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// No normal subgroups other than `1` and `G`, checked over the full lattice.
pub fn is_simple_with(g: &GroupTable, subs: &[SubgroupHandle]) -> bool {
    if g.order() == 1 {
        return false;
    }
    let full = SubgroupHandle::full(g.order());
    subs.iter()
        .filter(|s| !s.is_trivial() && !s.is_full())
        .all(|s| !subgroup::is_normal_in(g, s, &full))
}

pub fn is_simple(g: &GroupTable, ceilings: &Ceilings) -> Result<bool> {
    let subs = subgroup::enumerate_subgroups(g, ceilings)?;
    Ok(is_simple_with(g, &subs))
}

/// `min_{A < G} [G : A]` for simple `G`; refuses non-simple groups.
pub fn min_faithful_degree(g: &GroupTable, ceilings: &Ceilings) -> Result<usize> {
    let subs = subgroup::enumerate_subgroups(g, ceilings)?;
    if !is_simple_with(g, &subs) {
        return Err(Error::Precondition(
            "minimal faithful degree is only computed for simple groups".into(),
        ));
    }
    Ok(min_proper_index(g.order(), &subs))
}

fn min_proper_index(order: usize, subs: &[SubgroupHandle]) -> usize {
    subs.iter()
        .filter(|s| s.order() < order)
        .map(|s| order / s.order())
        .min()
        .unwrap_or(1)
}

/// Largest prime power `q` such that `G` has an element of order `q`.
pub fn q_param(g: &GroupTable) -> usize {
    (0..g.order())
        .map(|x| g.element_order(x))
        .filter(|&o| prime_power_base(o).is_some())
        .max()
        .unwrap_or(1)
}

/// Maximum of the minimal faithful degree over simple subgroups of `G`.
pub fn n_param(g: &GroupTable, ceilings: &Ceilings) -> Result<usize> {
    let subs = subgroup::enumerate_subgroups(g, ceilings)?;
    let mut best = 1;
    for h in subs.iter().filter(|h| !h.is_trivial()) {
        let sub_table = subgroup::TableGroup::of(&InducedSubgroup { g, h });
        let inner = subgroup::enumerate_subgroups(&sub_table, ceilings)?;
        let full = SubgroupHandle::full(sub_table.order());
        let simple = inner
            .iter()
            .filter(|s| !s.is_trivial() && !s.is_full())
            .all(|s| !subgroup::is_normal_in(&sub_table, s, &full));
        if simple {
            best = best.max(min_proper_index(sub_table.order(), &inner));
        }
    }
    Ok(best)
}

/// A subgroup of `g` renumbered `0..|h|`, identity first.
pub struct InducedSubgroup<'a> {
    pub g: &'a GroupTable,
    pub h: &'a SubgroupHandle,
}

impl InducedSubgroup<'_> {
    fn to_parent(&self, i: usize) -> usize {
        self.h.elements().nth(i).expect("index inside subgroup")
    }

    fn to_local(&self, x: usize) -> usize {
        self.h.elements().position(|e| e == x).expect("element inside subgroup")
    }
}

impl FiniteGroup for InducedSubgroup<'_> {
    fn order(&self) -> usize {
        self.h.order()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.to_local(self.g.mul(self.to_parent(a), self.to_parent(b)))
    }
    fn inv(&self, a: usize) -> usize {
        self.to_local(self.g.inv(self.to_parent(a)))
    }
    fn generators(&self) -> Vec<usize> {
        subgroup::generating_set(self.g, self.h)
            .into_iter()
            .map(|x| self.to_local(x))
            .collect()
    }
}
