//! Subgroups of direct powers `G^k` selected by a named constraint.
//!
//! Every constraint here is the image of `G^P` under a coordinate embedding,
//! so elements are numbered by their parameter vector in mixed radix and
//! multiplication is parameter-wise.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Ceilings, FiniteGroup, GroupTable};
use crate::subgroup::SubgroupHandle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    /// All of `G^k`.
    FullPower,
    /// `{g ∈ G^{2k} : g_1 = g_{2k} = 1}`.
    QLeftRight,
    /// Image of `G^{k-1}` in `G^{2k}` under `(g_i) ↦ (1, g_1, g_1, …, g_{k-1}, g_{k-1}, 1)`.
    ShiftedDiagonal,
    /// `{(x_1, …, x_{k-1}, (x_1⋯x_{k-1})⁻¹)}` in `G^k`; abelian `G` only.
    ZeroSum,
}

impl std::str::FromStr for Constraint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full-power" | "full" => Ok(Constraint::FullPower),
            "q-left-right" | "left-right" | "q" => Ok(Constraint::QLeftRight),
            "shifted-diagonal" | "shifted" => Ok(Constraint::ShiftedDiagonal),
            "zero-sum" => Ok(Constraint::ZeroSum),
            other => Err(Error::Parse(format!("unknown constraint {other:?}"))),
        }
    }
}

/// A constrained power of `base`, described by its word length `k`.
/// Not enumerated; see [`TupleGroup`] for the enumerated form.
#[derive(Clone, Debug)]
pub struct TupleSpec {
    base: Arc<GroupTable>,
    k: usize,
    constraint: Constraint,
}

impl TupleSpec {
    pub fn new(base: Arc<GroupTable>, k: usize, constraint: Constraint) -> Result<TupleSpec> {
        if k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        if constraint == Constraint::ZeroSum && !base.is_abelian() {
            return Err(Error::Invalid("zero-sum constraint needs an abelian base".into()));
        }
        Ok(TupleSpec { base, k, constraint })
    }

    pub fn base(&self) -> &GroupTable {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<GroupTable> {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn constraint(&self) -> Constraint {
        self.constraint
    }

    pub fn arity(&self) -> usize {
        match self.constraint {
            Constraint::FullPower | Constraint::ZeroSum => self.k,
            Constraint::QLeftRight | Constraint::ShiftedDiagonal => 2 * self.k,
        }
    }

    pub fn params(&self) -> usize {
        match self.constraint {
            Constraint::FullPower => self.k,
            Constraint::QLeftRight => 2 * self.k - 2,
            Constraint::ShiftedDiagonal | Constraint::ZeroSum => self.k - 1,
        }
    }

    /// `|G|^P`, saturating.
    pub fn order_u128(&self) -> u128 {
        (self.base.order() as u128).saturating_pow(self.params() as u32)
    }

    /// The coordinate that reads parameter `j` directly.
    fn primary_coord(&self, j: usize) -> usize {
        match self.constraint {
            Constraint::FullPower | Constraint::ZeroSum => j,
            Constraint::QLeftRight => j + 1,
            Constraint::ShiftedDiagonal => 2 * j + 1,
        }
    }

    /// Every coordinate whose value depends on parameter `j`.
    fn coords_of_param(&self, j: usize) -> Vec<usize> {
        match self.constraint {
            Constraint::FullPower => vec![j],
            Constraint::QLeftRight => vec![j + 1],
            Constraint::ShiftedDiagonal => vec![2 * j + 1, 2 * j + 2],
            Constraint::ZeroSum => vec![j, self.k - 1],
        }
    }

    pub fn tuple_from_params(&self, params: &[usize]) -> Vec<u32> {
        let g = &*self.base;
        let mut t = vec![0u32; self.arity()];
        match self.constraint {
            Constraint::FullPower => {
                for (j, &p) in params.iter().enumerate() {
                    t[j] = p as u32;
                }
            }
            Constraint::QLeftRight => {
                for (j, &p) in params.iter().enumerate() {
                    t[j + 1] = p as u32;
                }
            }
            Constraint::ShiftedDiagonal => {
                for (j, &p) in params.iter().enumerate() {
                    t[2 * j + 1] = p as u32;
                    t[2 * j + 2] = p as u32;
                }
            }
            Constraint::ZeroSum => {
                let mut prod = g.identity();
                for (j, &p) in params.iter().enumerate() {
                    t[j] = p as u32;
                    prod = g.mul(prod, p);
                }
                t[self.k - 1] = g.inv(prod) as u32;
            }
        }
        t
    }

    /// Parameters of `tuple` if it lies in this subgroup.
    pub fn params_of(&self, tuple: &[u32]) -> Option<Vec<usize>> {
        if tuple.len() != self.arity() {
            return None;
        }
        let params: Vec<usize> = (0..self.params())
            .map(|j| tuple[self.primary_coord(j)] as usize)
            .collect();
        (self.tuple_from_params(&params) == tuple).then_some(params)
    }

    pub fn contains_tuple(&self, tuple: &[u32]) -> bool {
        self.params_of(tuple).is_some()
    }

    pub fn enumerate(&self, ceilings: &Ceilings) -> Result<TupleGroup> {
        TupleGroup::new(self.clone(), ceilings)
    }
}

/// Restriction and projection for anything that is a set of tuples.
pub trait CoordinateSubgroup {
    fn base(&self) -> &GroupTable;
    fn arity(&self) -> usize;
    fn order_u128(&self) -> u128;
    /// `{π_S(h) : h ∈ H, h_j = 1 for j ∉ S}` (zero-based coordinates).
    fn restriction(&self, coords: &[usize]) -> Result<BTreeSet<Vec<u32>>>;
    /// `π_S(H)`.
    fn projection(&self, coords: &[usize]) -> Result<BTreeSet<Vec<u32>>>;
}

fn check_coords(arity: usize, coords: &[usize]) -> Result<()> {
    if coords.iter().any(|&c| c >= arity) {
        return Err(Error::Invalid(format!("coordinates {coords:?} outside arity {arity}")));
    }
    Ok(())
}

/// Visit every parameter vector over `free` positions (others identity).
fn for_each_assignment(n: usize, total: usize, free: &[usize], mut f: impl FnMut(&[usize])) {
    let mut params = vec![0usize; total];
    loop {
        f(&params);
        let mut i = 0;
        loop {
            if i == free.len() {
                return;
            }
            params[free[i]] += 1;
            if params[free[i]] < n {
                break;
            }
            params[free[i]] = 0;
            i += 1;
        }
    }
}

impl CoordinateSubgroup for TupleSpec {
    fn base(&self) -> &GroupTable {
        &self.base
    }

    fn arity(&self) -> usize {
        TupleSpec::arity(self)
    }

    fn order_u128(&self) -> u128 {
        TupleSpec::order_u128(self)
    }

    fn restriction(&self, coords: &[usize]) -> Result<BTreeSet<Vec<u32>>> {
        check_coords(self.arity(), coords)?;
        let inside: BTreeSet<usize> = coords.iter().copied().collect();
        // a parameter read outside S must be the identity
        let free: Vec<usize> = (0..self.params())
            .filter(|&j| inside.contains(&self.primary_coord(j)))
            .collect();
        let mut out = BTreeSet::new();
        for_each_assignment(self.base.order(), self.params(), &free, |p| {
            let t = self.tuple_from_params(p);
            if (0..t.len()).all(|c| inside.contains(&c) || t[c] == 0) {
                out.insert(coords.iter().map(|&c| t[c]).collect());
            }
        });
        Ok(out)
    }

    fn projection(&self, coords: &[usize]) -> Result<BTreeSet<Vec<u32>>> {
        check_coords(self.arity(), coords)?;
        let inside: BTreeSet<usize> = coords.iter().copied().collect();
        let free: Vec<usize> = (0..self.params())
            .filter(|&j| self.coords_of_param(j).iter().any(|c| inside.contains(c)))
            .collect();
        let mut out = BTreeSet::new();
        for_each_assignment(self.base.order(), self.params(), &free, |p| {
            let t = self.tuple_from_params(p);
            out.insert(coords.iter().map(|&c| t[c]).collect());
        });
        Ok(out)
    }
}

/// An enumerated [`TupleSpec`]; element `i` has parameters given by the
/// base-`|G|` digits of `i`, most significant first.
#[derive(Clone, Debug)]
pub struct TupleGroup {
    spec: TupleSpec,
    order: usize,
}

impl TupleGroup {
    pub fn new(spec: TupleSpec, ceilings: &Ceilings) -> Result<TupleGroup> {
        let order = spec.order_u128();
        if order > ceilings.elements as u128 {
            return Err(Error::Ceiling {
                what: "tuple group order",
                ceiling: ceilings.elements,
            });
        }
        Ok(TupleGroup {
            spec,
            order: order as usize,
        })
    }

    pub fn spec(&self) -> &TupleSpec {
        &self.spec
    }

    pub fn base(&self) -> &GroupTable {
        self.spec.base()
    }

    pub fn arity(&self) -> usize {
        self.spec.arity()
    }

    pub fn params_of_index(&self, mut i: usize) -> Vec<usize> {
        let n = self.base().order();
        let p = self.spec.params();
        let mut out = vec![0usize; p];
        for j in (0..p).rev() {
            out[j] = i % n;
            i /= n;
        }
        out
    }

    pub fn index_of_params(&self, params: &[usize]) -> usize {
        let n = self.base().order();
        params.iter().fold(0, |acc, &x| acc * n + x)
    }

    pub fn tuple(&self, i: usize) -> Vec<u32> {
        self.spec.tuple_from_params(&self.params_of_index(i))
    }

    pub fn index_of_tuple(&self, tuple: &[u32]) -> Option<usize> {
        self.spec.params_of(tuple).map(|p| self.index_of_params(&p))
    }

    /// `H` as a [`CoordinateSubgroup`].
    pub fn subgroup<'a>(&'a self, h: &'a SubgroupHandle) -> TupleSubgroup<'a> {
        TupleSubgroup { group: self, handle: h }
    }

    /// Subgroup handle from an explicit list of tuples (taken as generators).
    pub fn generated_by(&self, tuples: &[Vec<u32>]) -> Result<SubgroupHandle> {
        let gens = tuples
            .iter()
            .map(|t| {
                self.index_of_tuple(t)
                    .ok_or_else(|| Error::Invalid(format!("tuple {t:?} is not in the ambient group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(crate::subgroup::closure(self, &gens))
    }
}

impl FiniteGroup for TupleGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let g = self.base();
        let n = g.order();
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.spec.params() {
            out += g.mul(a % n, b % n) * scale;
            a /= n;
            b /= n;
            scale *= n;
        }
        out
    }

    fn inv(&self, a: usize) -> usize {
        let g = self.base();
        let n = g.order();
        let mut a = a;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.spec.params() {
            out += g.inv(a % n) * scale;
            a /= n;
            scale *= n;
        }
        out
    }

    fn generators(&self) -> Vec<usize> {
        let p = self.spec.params();
        let mut out = Vec::new();
        for j in 0..p {
            for &s in &self.base().generators() {
                let mut params = vec![0usize; p];
                params[j] = s;
                out.push(self.index_of_params(&params));
            }
        }
        out
    }
}

/// A subgroup of an enumerated tuple group.
#[derive(Clone, Copy)]
pub struct TupleSubgroup<'a> {
    pub group: &'a TupleGroup,
    pub handle: &'a SubgroupHandle,
}

impl CoordinateSubgroup for TupleSubgroup<'_> {
    fn base(&self) -> &GroupTable {
        self.group.base()
    }

    fn arity(&self) -> usize {
        self.group.arity()
    }

    fn order_u128(&self) -> u128 {
        self.handle.order() as u128
    }

    fn restriction(&self, coords: &[usize]) -> Result<BTreeSet<Vec<u32>>> {
        check_coords(self.arity(), coords)?;
        let inside: BTreeSet<usize> = coords.iter().copied().collect();
        Ok(self
            .handle
            .elements()
            .map(|e| self.group.tuple(e))
            .filter(|t| (0..t.len()).all(|c| inside.contains(&c) || t[c] == 0))
            .map(|t| coords.iter().map(|&c| t[c]).collect())
            .collect())
    }

    fn projection(&self, coords: &[usize]) -> Result<BTreeSet<Vec<u32>>> {
        check_coords(self.arity(), coords)?;
        Ok(self
            .handle
            .elements()
            .map(|e| {
                let t = self.group.tuple(e);
                coords.iter().map(|&c| t[c]).collect()
            })
            .collect())
    }
}

pub fn power_subgroup(
    base: Arc<GroupTable>,
    k: usize,
    constraint: Constraint,
    ceilings: &Ceilings,
) -> Result<TupleGroup> {
    TupleSpec::new(base, k, constraint)?.enumerate(ceilings)
}

/// A restriction or projection returned as a subgroup of `G^{|S|}`.
pub fn as_power_subgroup(
    base: &Arc<GroupTable>,
    tuples: &BTreeSet<Vec<u32>>,
    arity: usize,
    ceilings: &Ceilings,
) -> Result<(TupleGroup, SubgroupHandle)> {
    let power = power_subgroup(base.clone(), arity, Constraint::FullPower, ceilings)?;
    let elems = tuples
        .iter()
        .map(|t| power.index_of_tuple(t).expect("full power contains every tuple"));
    let h = SubgroupHandle::from_elements(power.order(), elems);
    Ok((power, h))
}

pub fn restriction(
    h: &dyn CoordinateSubgroup,
    base: &Arc<GroupTable>,
    coords: &[usize],
    ceilings: &Ceilings,
) -> Result<(TupleGroup, SubgroupHandle)> {
    as_power_subgroup(base, &h.restriction(coords)?, coords.len(), ceilings)
}

pub fn projection(
    h: &dyn CoordinateSubgroup,
    base: &Arc<GroupTable>,
    coords: &[usize],
    ceilings: &Ceilings,
) -> Result<(TupleGroup, SubgroupHandle)> {
    as_power_subgroup(base, &h.projection(coords)?, coords.len(), ceilings)
}

/// `{(g, g) : g ∈ G}` as a set of pairs.
pub fn diagonal_pairs(g: &GroupTable) -> BTreeSet<Vec<u32>> {
    (0..g.order() as u32).map(|x| vec![x, x]).collect()
}

/// `T = {i : H↾{i} ≠ G}`, zero-based.
pub fn minimal_support(h: &dyn CoordinateSubgroup) -> Result<Vec<usize>> {
    let n = h.base().order();
    let mut out = Vec::new();
    for i in 0..h.arity() {
        if h.restriction(&[i])?.len() != n {
            out.push(i);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn orders_match_parameter_counts() {
        let c = Ceilings::default();
        let c2 = Arc::new(named::cyclic(2));
        let c3 = Arc::new(named::cyclic(3));
        assert_eq!(power_subgroup(c2.clone(), 3, Constraint::ZeroSum, &c).unwrap().order(), 4);
        assert_eq!(power_subgroup(c3, 2, Constraint::ShiftedDiagonal, &c).unwrap().order(), 3);
        assert_eq!(power_subgroup(c2, 2, Constraint::QLeftRight, &c).unwrap().order(), 4);
    }

    #[test]
    fn zero_sum_rejects_nonabelian() {
        assert!(TupleSpec::new(Arc::new(named::symmetric(3)), 3, Constraint::ZeroSum).is_err());
    }

    #[test]
    fn shifted_diagonal_restricts_to_diag() {
        let g = Arc::new(named::alternating(5));
        let spec = TupleSpec::new(g.clone(), 6, Constraint::ShiftedDiagonal).unwrap();
        for i in 1..6 {
            assert_eq!(spec.restriction(&[2 * i - 1, 2 * i]).unwrap(), diagonal_pairs(&g));
        }
    }
}
