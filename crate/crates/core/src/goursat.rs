//! Goursat triples for subgroups of `G × G`, and subgroup enumeration of
//! `G × G` through them.
//!
//! The product is any [`TupleGroup`] with exactly two parameters (the full
//! square, or the left-right group for `k = 2`); element `a·|G| + b` is the
//! pair `(a, b)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Ceilings, FiniteGroup, GroupTable};
use crate::subgroup::{self, quotient, SubgroupHandle};
use crate::tuple::TupleGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoursatTriple {
    /// `π_A(K)` and `π_B(K)` as subgroups of `G`.
    #[serde(skip)]
    pub a: SubgroupHandle,
    #[serde(skip)]
    pub b: SubgroupHandle,
    #[serde(skip)]
    pub m: SubgroupHandle,
    #[serde(skip)]
    pub n: SubgroupHandle,
    /// Least element of `aM` to least element of the matching coset `bN`.
    pub theta: BTreeMap<usize, usize>,
}

fn check_pair(q: &TupleGroup) -> Result<usize> {
    if q.spec().params() != 2 {
        return Err(Error::Invalid("Goursat needs a group with two free coordinates".into()));
    }
    Ok(q.base().order())
}

fn least_in_coset(g: &GroupTable, x: usize, m: &[usize]) -> usize {
    m.iter().map(|&t| g.mul(x, t)).min().expect("subgroup is nonempty")
}

pub fn goursat_decompose(q: &TupleGroup, k: &SubgroupHandle) -> Result<GoursatTriple> {
    let n = check_pair(q)?;
    let g = q.base();
    let pairs: Vec<(usize, usize)> = k.elements().map(|e| (e / n, e % n)).collect();
    let a = SubgroupHandle::from_elements(n, pairs.iter().map(|p| p.0));
    let b = SubgroupHandle::from_elements(n, pairs.iter().map(|p| p.1));
    let m = SubgroupHandle::from_elements(n, pairs.iter().filter(|p| p.1 == 0).map(|p| p.0));
    let nn = SubgroupHandle::from_elements(n, pairs.iter().filter(|p| p.0 == 0).map(|p| p.1));
    let m_el: Vec<usize> = m.elements().collect();
    let n_el: Vec<usize> = nn.elements().collect();
    let mut theta = BTreeMap::new();
    for &(x, y) in &pairs {
        theta.insert(least_in_coset(g, x, &m_el), least_in_coset(g, y, &n_el));
    }
    Ok(GoursatTriple {
        a,
        b,
        m,
        n: nn,
        theta,
    })
}

/// `{(a, b) : a ∈ A, b ∈ B, θ(aM) = bN}`.
pub fn goursat_reconstruct(q: &TupleGroup, t: &GoursatTriple) -> Result<SubgroupHandle> {
    let n = check_pair(q)?;
    let g = q.base();
    let m_el: Vec<usize> = t.m.elements().collect();
    let n_el: Vec<usize> = t.n.elements().collect();
    let mut elems = Vec::new();
    for x in t.a.elements() {
        let target = t.theta[&least_in_coset(g, x, &m_el)];
        for y in t.b.elements() {
            if least_in_coset(g, y, &n_el) == target {
                elems.push(x * n + y);
            }
        }
    }
    Ok(SubgroupHandle::from_elements(q.order(), elems))
}

/// Every subgroup of `G × G`, one per Goursat datum `(A, M, B, N, θ)`.
pub fn enumerate_product_subgroups(q: &TupleGroup, ceilings: &Ceilings) -> Result<Vec<SubgroupHandle>> {
    let n = check_pair(q)?;
    let g = q.base();
    let subs = subgroup::enumerate_subgroups(g, ceilings)?;
    // (A, M, A/M) for every normal pair
    let mut sections = Vec::new();
    for a in &subs {
        for m in subgroup::normal_subgroups(g, &subs, a) {
            let quo = quotient(g, a, &m);
            sections.push((a.clone(), quo));
        }
    }
    let mut out = Vec::new();
    for (a, qa) in &sections {
        for (b, qb) in &sections {
            if qa.group.order() != qb.group.order() {
                continue;
            }
            for theta in subgroup::isomorphisms(&qa.group, &qb.group) {
                let mut elems = Vec::with_capacity(a.order() * b.order() / qa.group.order());
                for x in a.elements() {
                    let target = theta[qa.coset_of[x] as usize] as u32;
                    for y in b.elements() {
                        if qb.coset_of[y] == target {
                            elems.push(x * n + y);
                        }
                    }
                }
                if out.len() >= ceilings.subgroups {
                    return Err(Error::Ceiling {
                        what: "subgroup count",
                        ceiling: ceilings.subgroups,
                    });
                }
                out.push(SubgroupHandle::from_elements(q.order(), elems));
            }
        }
    }
    out.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.cmp(y)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;
    use crate::tuple::{power_subgroup, Constraint};
    use std::sync::Arc;

    #[test]
    fn product_enumeration_matches_generic_for_s3() {
        let c = Ceilings::default();
        let q = power_subgroup(Arc::new(named::symmetric(3)), 2, Constraint::FullPower, &c).unwrap();
        let mut via_goursat = enumerate_product_subgroups(&q, &c).unwrap();
        let mut generic = subgroup::enumerate_subgroups(&q, &c).unwrap();
        via_goursat.sort();
        generic.sort();
        assert_eq!(via_goursat, generic);
    }

    #[test]
    fn inversion_graph_on_c3() {
        let c = Ceilings::default();
        let g = Arc::new(named::cyclic(3));
        let q = power_subgroup(g.clone(), 2, Constraint::FullPower, &c).unwrap();
        let graph = SubgroupHandle::from_elements(9, (0..3).map(|x| x * 3 + g.inv(x)));
        let t = goursat_decompose(&q, &graph).unwrap();
        assert!(t.m.is_trivial() && t.n.is_trivial());
        for (&x, &y) in &t.theta {
            assert_eq!(y, g.inv(x));
        }
        assert_eq!(goursat_reconstruct(&q, &t).unwrap(), graph);
    }
}
