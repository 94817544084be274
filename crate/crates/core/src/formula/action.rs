//! Group actions on variable indices, invariance, and stabilizers.

use std::collections::HashMap;

use super::Formula;
use crate::error::{Error, Result};
use crate::group::{Ceilings, FiniteGroup};
use crate::subgroup::{self, SubgroupHandle};

/// Permutations of `[m]` attached to the generators of a group.
#[derive(Clone, Debug)]
pub struct VarAction {
    pub m: usize,
    pub generators: Vec<Vec<u32>>,
}

impl VarAction {
    pub fn new(m: usize, generators: Vec<Vec<u32>>) -> Result<VarAction> {
        for p in &generators {
            if !is_permutation(p, m) {
                return Err(Error::Invalid("generator table is not a permutation of [m]".into()));
            }
        }
        Ok(VarAction { m, generators })
    }

    /// Checks `perm_of(a∘b) = perm_of(a)∘perm_of(b)` on every pair drawn from
    /// `elements`. Returns the first failing pair.
    pub fn homomorphism_violation<G: FiniteGroup + ?Sized>(
        g: &G,
        elements: &[usize],
        perm_of: &dyn Fn(usize) -> Vec<u32>,
    ) -> Option<(usize, usize)> {
        for &a in elements {
            let pa = perm_of(a);
            for &b in elements {
                let pb = perm_of(b);
                let pab = perm_of(g.mul(a, b));
                if (0..pab.len()).any(|i| pab[i] != pa[pb[i] as usize]) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

pub fn is_permutation(p: &[u32], m: usize) -> bool {
    if p.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    p.iter().all(|&x| (x as usize) < m && !std::mem::replace(&mut seen[x as usize], true))
}

/// Fixed by every generator; sound since the generators generate the group.
pub fn is_invariant(f: &Formula, action: &VarAction) -> bool {
    action.generators.iter().all(|p| f.act(p) == *f)
}

/// `{q ∈ Q : act(q, f) = f}`.
pub fn syntactic_stabilizer<G: FiniteGroup + ?Sized>(
    f: &Formula,
    q: &G,
    perm_of: &dyn Fn(usize) -> Vec<u32>,
    ceilings: &Ceilings,
) -> Result<SubgroupHandle> {
    check_ceiling(q.order(), ceilings)?;
    let h = SubgroupHandle::from_elements(q.order(), (0..q.order()).filter(|&x| f.act(&perm_of(x)) == *f));
    debug_assert!(subgroup::is_subgroup(q, &h));
    Ok(h)
}

/// Stabilizer of an integer-valued function given as a table over `Ω`, with
/// `act(q, ω)` the index of `ω ∘ π_q`.
pub fn function_stabilizer<G: FiniteGroup + ?Sized>(
    q: &G,
    values: &[u32],
    act: &dyn Fn(usize, usize) -> usize,
) -> SubgroupHandle {
    let gens_ok = |x: usize| (0..values.len()).all(|w| values[act(x, w)] == values[w]);
    SubgroupHandle::from_elements(q.order(), (0..q.order()).filter(|&x| gens_ok(x)))
}

/// Semantic stabilizer over an explicit `Ω ⊆ {0,1}^m`. Fails if `Ω` is not
/// closed under the action.
pub fn semantic_stabilizer<G: FiniteGroup + ?Sized>(
    f: &Formula,
    q: &G,
    perm_of: &dyn Fn(usize) -> Vec<u32>,
    omega: &[Vec<bool>],
    ceilings: &Ceilings,
) -> Result<SubgroupHandle> {
    check_ceiling(q.order(), ceilings)?;
    check_ceiling(omega.len(), ceilings)?;
    let index: HashMap<&[bool], usize> = omega.iter().enumerate().map(|(i, x)| (x.as_slice(), i)).collect();
    let values: Vec<u32> = omega
        .iter()
        .map(|x| f.evaluate(x).map(u32::from))
        .collect::<Result<_>>()?;
    let perms: Vec<Vec<u32>> = (0..q.order()).map(perm_of).collect();
    let mut table = vec![0usize; q.order() * omega.len()];
    for (qi, p) in perms.iter().enumerate() {
        for (wi, x) in omega.iter().enumerate() {
            let moved: Vec<bool> = p.iter().map(|&j| x[j as usize]).collect();
            table[qi * omega.len() + wi] = *index
                .get(moved.as_slice())
                .ok_or_else(|| Error::Precondition("input domain is not closed under the action".into()))?;
        }
    }
    let n = omega.len();
    Ok(function_stabilizer(q, &values, &|qi, wi| table[qi * n + wi]))
}

fn check_ceiling(n: usize, ceilings: &Ceilings) -> Result<()> {
    if n > ceilings.elements {
        return Err(Error::Ceiling {
            what: "enumeration size",
            ceiling: ceilings.elements,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    fn swap_action(x: usize) -> Vec<u32> {
        if x == 0 {
            vec![0, 1]
        } else {
            vec![1, 0]
        }
    }

    #[test]
    fn literal_has_trivial_stabilizer_under_swap() {
        let g = named::cyclic(2);
        let h = syntactic_stabilizer(&Formula::pos(0), &g, &swap_action, &Ceilings::default()).unwrap();
        assert!(h.is_trivial());
        let c = syntactic_stabilizer(&Formula::constant(true), &g, &swap_action, &Ceilings::default()).unwrap();
        assert!(c.is_full());
    }

    #[test]
    fn semantic_contains_syntactic() {
        let g = named::cyclic(2);
        let omega: Vec<Vec<bool>> = (0..4).map(|m| vec![m & 1 == 1, m & 2 == 2]).collect();
        let f = Formula::or(vec![Formula::pos(0), Formula::and(vec![Formula::pos(1), Formula::pos(1)])]);
        let syn = syntactic_stabilizer(&f, &g, &swap_action, &Ceilings::default()).unwrap();
        let sem = semantic_stabilizer(&f, &g, &swap_action, &omega, &Ceilings::default()).unwrap();
        assert!(syn.is_trivial());
        assert!(sem.is_full());
    }
}
