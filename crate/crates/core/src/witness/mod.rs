//! Restriction graphs `E(H)`, the nonabelian witness `μ(H, K)`, and the
//! framework check `size(Φ) ≥ c^{d(μ^{1/d} − 1)}` on concrete formulas.

pub mod beta;
pub mod sweeps;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::fp::{mu_p, FpSubspace};
use crate::group::{Ceilings, FiniteGroup, GroupTable};
use crate::params::{is_prime, min_faithful_degree};
use crate::subgroup::SubgroupHandle;
use crate::tuple::{diagonal_pairs, Constraint, CoordinateSubgroup, TupleGroup, TupleSpec};
use crate::word::{self, var_coords, var_index};

/// Spanning subgraph of the path on `k` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeGraph {
    pub k: usize,
    /// `edges[j]` joins vertices `j` and `j + 1` (zero-based).
    pub edges: Vec<bool>,
}

impl EdgeGraph {
    pub fn intersect(&self, other: &EdgeGraph) -> EdgeGraph {
        EdgeGraph {
            k: self.k,
            edges: self.edges.iter().zip(&other.edges).map(|(a, b)| *a && *b).collect(),
        }
    }

    /// Vertex sets of the connected components, as `(first, last)` intervals.
    pub fn components(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for v in 0..self.k {
            if v + 1 == self.k || !self.edges[v] {
                out.push((start, v));
                start = v + 1;
            }
        }
        out
    }

    pub fn largest_component(&self) -> usize {
        self.components().iter().map(|(a, b)| b - a + 1).max().unwrap_or(0)
    }

    /// One-based edge list `{i, i+1}`.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        (0..self.edges.len()).filter(|&j| self.edges[j]).map(|j| (j + 1, j + 2)).collect()
    }
}

/// Edge `{i, i+1}` iff `H` restricted to the coordinate pair between
/// matrices `i` and `i+1` is exactly the diagonal. `H` lives in a
/// left-right layout of arity `2k`.
pub fn edge_set(h: &dyn CoordinateSubgroup) -> Result<EdgeGraph> {
    let arity = h.arity();
    if arity % 2 != 0 || arity < 2 {
        return Err(Error::Invalid("edge sets need a left-right layout of arity 2k".into()));
    }
    let k = arity / 2;
    let diag = diagonal_pairs(h.base());
    let mut edges = Vec::with_capacity(k - 1);
    for j in 0..k - 1 {
        edges.push(h.restriction(&[2 * j + 1, 2 * j + 2])? == diag);
    }
    Ok(EdgeGraph { k, edges })
}

/// Largest component of `E(H) ∩ E(K)`, and `0` when `K` is all of `Q`.
/// The caller attests that `K` is a semantic stabilizer.
pub fn mu_nonabelian(h: &dyn CoordinateSubgroup, kk: &dyn CoordinateSubgroup, q_order: u128) -> Result<usize> {
    if kk.order_u128() == q_order {
        return Ok(0);
    }
    Ok(edge_set(h)?.intersect(&edge_set(kk)?).largest_component())
}

/// `c^{d(μ^{1/d} − 1)}`, with `0` for `μ = 0`. The integer form is given
/// when `μ` is a perfect `d`-th power.
pub fn mu_bound(c: usize, mu: usize, d: usize) -> (f64, Option<u128>) {
    if mu == 0 {
        return (0.0, Some(0));
    }
    let d = d.max(1);
    let value = (c as f64).powf(d as f64 * ((mu as f64).powf(1.0 / d as f64) - 1.0));
    let exact = crate::build::exact_root(mu, d).map(|r| (c as u128).saturating_pow((d * (r - 1)) as u32));
    (value, exact)
}

/// Relative slack allowed when a bound is irrational.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Setting {
    /// `Q = {g_1 = g_{2k} = 1} ≤ G^{2k}`, `G` nonabelian simple, `c = n(G)`.
    Nonabelian,
    /// `Q = C_p^k` acting on the left, `c = p`; the formula is first
    /// rewritten through `M_{i,a,b} ↦ M_{i,a−b,0}`.
    CyclicPrime,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameworkReport {
    pub setting: Setting,
    pub k: usize,
    pub size: u64,
    pub depth: u32,
    pub q_order: usize,
    pub h_order: usize,
    pub k_order: usize,
    pub mu: usize,
    pub c: usize,
    /// Bound at the measured depth; this is the one the framework certifies.
    pub certified_bound: f64,
    pub certified_exact: Option<u128>,
    /// Bound at a construction parameter `d`, when one was given.
    pub param_d: Option<usize>,
    pub param_bound: Option<f64>,
    pub param_exact: Option<u128>,
    pub holds: bool,
}

fn at_least(size: u64, value: f64, exact: Option<u128>) -> bool {
    match exact {
        Some(e) => size as u128 >= e,
        None => size as f64 >= value * (1.0 - BOUND_TOLERANCE),
    }
}

/// Rewrites literals of a formula over the standard `C_p` so that every
/// variable has `b = 0`; equal to the original on `Ω`.
pub fn circulant_reduction(f: &Formula, p: usize) -> Formula {
    f.map_literals(&|v, neg| {
        let (i, a, b) = var_coords(p, v);
        (var_index(p, i, (a + p - b) % p, 0), neg)
    })
}

pub fn choose_setting(g: &GroupTable, ceilings: &Ceilings) -> Result<Setting> {
    if g.is_standard_cyclic() && is_prime(g.order()) {
        return Ok(Setting::CyclicPrime);
    }
    if !g.is_abelian() && crate::params::is_simple(g, ceilings)? {
        return Ok(Setting::Nonabelian);
    }
    Err(Error::Precondition(
        "framework check needs the standard C_p or a nonabelian simple group".into(),
    ))
}

/// Shift vectors of a subgroup of `C_p^k` as a subspace of `F_p^k`.
pub fn cyclic_subspace(q: &TupleGroup, h: &SubgroupHandle) -> FpSubspace {
    let g = q.base();
    let p = g.order() as u32;
    let vecs = h
        .elements()
        .map(|e| q.tuple(e).iter().map(|&x| g.act(x as usize, 0) as u32).collect::<Vec<_>>());
    FpSubspace::span(p, q.spec().k(), vecs).expect("p is prime")
}

pub fn framework_check(
    f: &Formula,
    g: &Arc<GroupTable>,
    k: usize,
    param_d: Option<usize>,
    ceilings: &Ceilings,
) -> Result<FrameworkReport> {
    let setting = choose_setting(g, ceilings)?;
    let (q, target, c) = match setting {
        Setting::CyclicPrime => (
            TupleSpec::new(g.clone(), k, Constraint::FullPower)?.enumerate(ceilings)?,
            circulant_reduction(f, g.order()),
            g.order(),
        ),
        Setting::Nonabelian => (
            TupleSpec::new(g.clone(), k, Constraint::QLeftRight)?.enumerate(ceilings)?,
            f.clone(),
            min_faithful_degree(g, ceilings)?,
        ),
    };
    let h = word::syntactic_stabilizer(&target, &q);
    let kk = word::semantic_stabilizer(&target, &q, ceilings.elements)?;
    let mu = match setting {
        Setting::CyclicPrime => mu_p(&cyclic_subspace(&q, &h)).mu,
        Setting::Nonabelian => mu_nonabelian(&q.subgroup(&h), &q.subgroup(&kk), q.order() as u128)?,
    };
    let (certified_bound, certified_exact) = mu_bound(c, mu, f.depth() as usize);
    let (param_bound, param_exact) = match param_d {
        Some(d) => {
            let (v, e) = mu_bound(c, mu, d);
            (Some(v), e)
        }
        None => (None, None),
    };
    let holds = at_least(f.size(), certified_bound, certified_exact)
        && param_bound.map_or(true, |v| at_least(f.size(), v, param_exact));
    Ok(FrameworkReport {
        setting,
        k,
        size: f.size(),
        depth: f.depth(),
        q_order: q.order(),
        h_order: h.order(),
        k_order: kk.order(),
        mu,
        c,
        certified_bound,
        certified_exact,
        param_d,
        param_bound,
        param_exact,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn components() {
        let g = EdgeGraph {
            k: 5,
            edges: vec![true, false, true, true],
        };
        assert_eq!(g.components(), vec![(0, 1), (2, 4)]);
        assert_eq!(g.largest_component(), 3);
    }

    #[test]
    fn mu_of_shifted_diagonal_for_a5() {
        let g = Arc::new(named::alternating(5));
        for k in 2..=6 {
            let sd = TupleSpec::new(g.clone(), k, Constraint::ShiftedDiagonal).unwrap();
            let q = TupleSpec::new(g.clone(), k, Constraint::QLeftRight).unwrap();
            assert_eq!(mu_nonabelian(&sd, &sd, q.order_u128()).unwrap(), k);
            assert_eq!(mu_nonabelian(&sd, &q, q.order_u128()).unwrap(), 0);
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(mu_bound(2, 4, 2).1, Some(4));
        assert_eq!(mu_bound(3, 3, 1).1, Some(9));
        assert_eq!(mu_bound(5, 0, 3), (0.0, Some(0)));
        assert!(mu_bound(2, 2, 2).1.is_none());
    }
}
