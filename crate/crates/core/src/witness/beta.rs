//! `β_{Q,Ω,d}` over a tiny `Q`: membership in `B` and `N`, good tuples,
//! and a level-by-level evaluator.
//!
//! For unbounded `r` the minimum is computed exactly: every component has
//! `H_i ≥ H`, so the components of cost at most `τ` admit a good
//! sub-family iff the whole family already meets (b) and (c). The
//! `r_max`-limited value is found by subset search over the non-dominated
//! components and is reported as `hi`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Ceilings, FiniteGroup};
use crate::subgroup::{core, enumerate_subgroups, SubgroupHandle};
use crate::tuple::TupleGroup;
use crate::word::{act_on_tuple, omega_index, omega_size, omega_tuple, var_coords};

/// `None` is `∞`.
pub type Cost = Option<u64>;

fn times(index: usize, b: Cost) -> Cost {
    match b {
        Some(0) => Some(0),
        Some(v) => Some(v.saturating_mul(index as u64)),
        None => None,
    }
}

fn fmt_cost(c: Cost) -> String {
    c.map_or("inf".into(), |v| v.to_string())
}

/// Default cap on intersections tried by the bounded-`r` search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 2_000_000;
/// Default cap on the subgroup count of `Q`.
pub const DEFAULT_MAX_SUBGROUPS: usize = 200;
/// Orbit unions are enumerated for `B` membership up to this many orbits.
pub const MAX_ORBITS_FOR_B: usize = 16;

/// One component `(H_i, U_i, L_i, V_i)` of a good tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub h: SubgroupHandle,
    pub u: SubgroupHandle,
    pub l: SubgroupHandle,
    pub v: SubgroupHandle,
}

/// Which of the conditions (a)–(e) a candidate tuple meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GoodTupleCheck {
    pub containments: bool,
    pub syntactic_intersection: bool,
    pub semantic_intersection: bool,
    pub syntactic_conjugate: bool,
    pub semantic_conjugate: bool,
    /// `L_i ∈ N` and `V_i ∈ B` for every `i`.
    pub memberships: bool,
}

impl GoodTupleCheck {
    pub fn all(&self) -> bool {
        self.containments
            && self.syntactic_intersection
            && self.semantic_intersection
            && self.syntactic_conjugate
            && self.semantic_conjugate
            && self.memberships
    }
}

/// Checks each condition independently; `r = 0` is rejected.
pub fn check_good_tuple(
    engine: &BetaEngine,
    h: &SubgroupHandle,
    kk: &SubgroupHandle,
    comps: &[Component],
) -> GoodTupleCheck {
    let q = &engine.q;
    let full = SubgroupHandle::full(q.order());
    let mut hs = full.clone();
    let mut ls = full;
    let mut out = GoodTupleCheck {
        containments: !comps.is_empty(),
        syntactic_intersection: false,
        semantic_intersection: false,
        syntactic_conjugate: true,
        semantic_conjugate: true,
        memberships: true,
    };
    for c in comps {
        out.containments &= c.u.is_subgroup_of(&c.v) && c.h.is_subgroup_of(&c.l);
        out.syntactic_conjugate &= core(q, &c.u, &c.h).is_subgroup_of(&c.h);
        out.semantic_conjugate &= core(q, &c.v, &c.h).is_subgroup_of(&c.l);
        out.memberships &= engine.is_in_n(&c.l) && engine.is_in_b(&c.v);
        hs = hs.intersect(&c.h);
        ls = ls.intersect(&c.l);
    }
    out.syntactic_intersection = !comps.is_empty() && hs == *h;
    out.semantic_intersection = !comps.is_empty() && ls.is_subgroup_of(kk);
    out
}

#[derive(Clone, Debug)]
struct Entry {
    exact: Cost,
    hi: Cost,
    budget_exhausted: bool,
    witness: Vec<(usize, usize, usize, usize)>,
}

#[derive(Clone, Debug)]
struct CompCost {
    exact: Cost,
    hi: Cost,
    /// `(U, V)` achieving `hi`.
    best: Option<(usize, usize)>,
    budget_exhausted: bool,
}

/// `Q` acting on `Ω = G^k` through the variable action. Every subgroup is
/// in `B` and `N` when the action is regular, and then the point tables
/// are only built on request.
pub struct OmegaAction {
    pub q: TupleGroup,
    size: usize,
    perm: Vec<Vec<u32>>,
    regular: bool,
}

/// Largest `|Q|·|Ω|` for which point tables are built.
pub const MAX_ACTION_TABLE: usize = 4_000_000;

impl OmegaAction {
    pub fn new(q: TupleGroup, ceilings: &Ceilings, tables: bool) -> Result<OmegaAction> {
        let spec = q.spec().clone();
        let g = spec.base();
        let k = spec.k();
        let size = omega_size(g.order(), k);
        if size > ceilings.elements as u128 {
            return Err(Error::Ceiling {
                what: "input domain size",
                ceiling: ceilings.elements,
            });
        }
        let size = size as usize;
        let origin = vec![0usize; k];
        let fixing = (0..q.order())
            .filter(|&x| act_on_tuple(&spec, &q.tuple(x), &origin).iter().all(|&y| y == 0))
            .count();
        let regular = q.order() == size && fixing == 1;
        let mut out = OmegaAction {
            q,
            size,
            perm: Vec::new(),
            regular,
        };
        if tables || !regular {
            if out.q.order().saturating_mul(size) > MAX_ACTION_TABLE {
                return Err(Error::Ceiling {
                    what: "|Q|·|Ω| for action tables",
                    ceiling: MAX_ACTION_TABLE,
                });
            }
            out.perm = (0..out.q.order())
                .map(|x| {
                    let t = out.q.tuple(x);
                    (0..size)
                        .map(|w| omega_index(g.order(), &act_on_tuple(&spec, &t, &omega_tuple(g.order(), k, w))) as u32)
                        .collect()
                })
                .collect();
        }
        Ok(out)
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn omega_len(&self) -> usize {
        self.size
    }

    /// Stabilizer of a table over `Ω`; needs point tables.
    pub fn table_stabilizer<T: PartialEq>(&self, values: &[T]) -> SubgroupHandle {
        assert!(!self.perm.is_empty(), "action tables were not built");
        SubgroupHandle::from_elements(
            self.q.order(),
            (0..self.q.order()).filter(|&x| self.perm[x].iter().enumerate().all(|(w, &y)| values[y as usize] == values[w])),
        )
    }

    fn orbit_labels(&self, h: &SubgroupHandle) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.size];
        let mut count = 0;
        for w in 0..self.size {
            if label[w] != usize::MAX {
                continue;
            }
            for x in h.elements() {
                label[self.perm[x][w] as usize] = count;
            }
            count += 1;
        }
        (label, count)
    }

    /// `L ∈ N` iff `L` is the stabilizer of its own orbit labelling.
    pub fn in_n(&self, l: &SubgroupHandle) -> bool {
        self.regular || self.table_stabilizer(&self.orbit_labels(l).0) == *l
    }

    /// `K ∈ B` iff some union of `K`-orbits has stabilizer exactly `K`.
    pub fn in_b(&self, kk: &SubgroupHandle) -> Result<bool> {
        if self.regular {
            return Ok(true);
        }
        let (label, count) = self.orbit_labels(kk);
        if count > MAX_ORBITS_FOR_B {
            return Err(Error::Ceiling {
                what: "orbit count for B membership",
                ceiling: MAX_ORBITS_FOR_B,
            });
        }
        // a union and its complement have the same stabilizer
        for mask in 0u32..(1u32 << (count - 1)) {
            let table: Vec<bool> = label.iter().map(|&o| mask >> o & 1 == 1).collect();
            if self.table_stabilizer(&table) == *kk {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Subgroup lattice of a tiny `Q` with memoised level tables.
pub struct BetaEngine {
    pub action: OmegaAction,
    pub q: TupleGroup,
    subs: Vec<SubgroupHandle>,
    lookup: HashMap<FixedBitSet, usize>,
    in_b: Vec<bool>,
    in_n: Vec<bool>,
    literal: Vec<bool>,
    full: usize,
    pub r_max: usize,
    pub budget: u64,
    levels: Vec<HashMap<(usize, usize), Entry>>,
    comp_levels: Vec<HashMap<(usize, usize), CompCost>>,
    cores: HashMap<(usize, usize), usize>,
}

impl BetaEngine {
    pub fn new(q: TupleGroup, r_max: usize, ceilings: &Ceilings, max_subgroups: usize) -> Result<BetaEngine> {
        let subs = enumerate_subgroups(&q, ceilings)?;
        if subs.len() > max_subgroups {
            return Err(Error::Ceiling {
                what: "subgroups of Q for the beta search",
                ceiling: max_subgroups,
            });
        }
        let action = OmegaAction::new(q.clone(), ceilings, true)?;
        let spec = q.spec().clone();
        let g = spec.base();
        let k = spec.k();
        let lookup: HashMap<FixedBitSet, usize> = subs.iter().enumerate().map(|(i, s)| (s.bits().clone(), i)).collect();
        let full = lookup[SubgroupHandle::full(q.order()).bits()];
        let in_n = subs.iter().map(|s| action.in_n(s)).collect();
        let in_b = subs.iter().map(|s| action.in_b(s)).collect::<Result<Vec<bool>>>()?;
        let mut literal = vec![false; subs.len()];
        let n = g.degree();
        for v in 0..(k * n * n) as u32 {
            let (i, a, b) = var_coords(n, v);
            let table: Vec<bool> = (0..action.omega_len())
                .map(|w| g.act(omega_tuple(g.order(), k, w)[i], b) == a)
                .collect();
            let stab = action.table_stabilizer(&table);
            let idx = lookup[stab.bits()];
            if idx != full {
                literal[idx] = true;
            }
        }
        Ok(BetaEngine {
            action,
            q,
            subs,
            lookup,
            in_b,
            in_n,
            literal,
            full,
            r_max: r_max.max(1),
            budget: DEFAULT_SEARCH_BUDGET,
            levels: Vec::new(),
            comp_levels: Vec::new(),
            cores: HashMap::new(),
        })
    }

    pub fn subgroups(&self) -> &[SubgroupHandle] {
        &self.subs
    }

    pub fn is_regular(&self) -> bool {
        self.action.is_regular()
    }

    pub fn index_of(&self, h: &SubgroupHandle) -> Result<usize> {
        self.lookup
            .get(h.bits())
            .copied()
            .ok_or_else(|| Error::Invalid("not a subgroup of Q".into()))
    }

    pub fn is_in_b(&self, h: &SubgroupHandle) -> bool {
        self.index_of(h).map(|i| self.in_b[i]).unwrap_or(false)
    }

    pub fn is_in_n(&self, h: &SubgroupHandle) -> bool {
        self.index_of(h).map(|i| self.in_n[i]).unwrap_or(false)
    }

    /// `Stab_Q(χ|_Ω)` for some coordinate function `χ`, and not `Q`.
    pub fn is_literal_stabilizer(&self, h: &SubgroupHandle) -> bool {
        self.index_of(h).map(|i| self.literal[i]).unwrap_or(false)
    }

    fn core_idx(&mut self, u: usize, h: usize) -> usize {
        if let Some(&c) = self.cores.get(&(u, h)) {
            return c;
        }
        let c = core(&self.q, &self.subs[u], &self.subs[h]);
        let idx = self.lookup[c.bits()];
        self.cores.insert((u, h), idx);
        idx
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.subs[a].is_subgroup_of(&self.subs[b])
    }

    fn base(&self, u: usize) -> Cost {
        if u == self.full {
            Some(0)
        } else if self.literal[u] {
            Some(1)
        } else {
            None
        }
    }

    /// `(exact, hi)` at level `d` for indices into [`subgroups`](Self::subgroups).
    fn level(&mut self, d: usize, h: usize, kk: usize) -> Entry {
        if d == 0 {
            let c = self.base(h);
            return Entry {
                exact: c,
                hi: c,
                budget_exhausted: false,
                witness: Vec::new(),
            };
        }
        if kk == self.full {
            // taken as 0 for every d, matching β(H, Q) = 0
            return Entry {
                exact: Some(0),
                hi: Some(0),
                budget_exhausted: false,
                witness: Vec::new(),
            };
        }
        while self.levels.len() <= d {
            self.levels.push(HashMap::new());
            self.comp_levels.push(HashMap::new());
        }
        if let Some(e) = self.levels[d].get(&(h, kk)) {
            return e.clone();
        }
        let s = self.subs.len();
        let mut comps: Vec<(usize, usize, CompCost)> = Vec::new();
        let mut pairs = Vec::new();
        for hi_ in (0..s).filter(|&x| self.leq(h, x)) {
            for li in (0..s).filter(|&x| self.in_n[x] && self.leq(hi_, x)) {
                pairs.push((hi_, li));
            }
        }
        for (hi_, li) in pairs {
            let c = self.component(d, hi_, li);
            comps.push((hi_, li, c));
        }
        let mut exhausted = comps.iter().any(|c| c.2.budget_exhausted);

        // exact: smallest threshold at which the whole family is good
        let mut order: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].2.exact.is_some()).collect();
        order.sort_by_key(|&i| comps[i].2.exact);
        let mut hs = SubgroupHandle::full(self.q.order());
        let mut ls = hs.clone();
        let mut exact = None;
        let mut j = 0;
        while j < order.len() {
            let tau = comps[order[j]].2.exact;
            while j < order.len() && comps[order[j]].2.exact == tau {
                hs = hs.intersect(&self.subs[comps[order[j]].0]);
                ls = ls.intersect(&self.subs[comps[order[j]].1]);
                j += 1;
            }
            if hs == self.subs[h] && ls.is_subgroup_of(&self.subs[kk]) {
                exact = tau;
                break;
            }
        }

        // hi: same thresholds on the bounded costs, with at most r_max components
        let mut order: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].2.hi.is_some()).collect();
        order.sort_by_key(|&i| comps[i].2.hi);
        let mut hi = None;
        let mut witness = Vec::new();
        let mut spent = 0u64;
        let mut j = 0;
        while j < order.len() {
            let tau = comps[order[j]].2.hi;
            while j < order.len() && comps[order[j]].2.hi == tau {
                j += 1;
            }
            let pool: Vec<usize> = order[..j].to_vec();
            let minimal: Vec<usize> = pool
                .iter()
                .copied()
                .filter(|&a| {
                    !pool.iter().any(|&b| {
                        b != a
                            && self.leq(comps[b].0, comps[a].0)
                            && self.leq(comps[b].1, comps[a].1)
                            && (comps[b].0, comps[b].1) != (comps[a].0, comps[a].1)
                    })
                })
                .collect();
            match self.subset_search(h, kk, &comps, &minimal, &mut spent) {
                Ok(Some(chosen)) => {
                    hi = tau;
                    witness = chosen
                        .iter()
                        .map(|&i| {
                            let (u, v) = comps[i].2.best.expect("finite cost has a witness");
                            (comps[i].0, u, comps[i].1, v)
                        })
                        .collect();
                    break;
                }
                Ok(None) => {}
                Err(()) => {
                    exhausted = true;
                    break;
                }
            }
        }
        let e = Entry {
            exact,
            hi,
            budget_exhausted: exhausted,
            witness,
        };
        self.levels[d].insert((h, kk), e.clone());
        e
    }

    fn subset_search(
        &self,
        h: usize,
        kk: usize,
        comps: &[(usize, usize, CompCost)],
        pool: &[usize],
        spent: &mut u64,
    ) -> std::result::Result<Option<Vec<usize>>, ()> {
        fn rec(
            e: &BetaEngine,
            h: usize,
            kk: usize,
            comps: &[(usize, usize, CompCost)],
            pool: &[usize],
            start: usize,
            left: usize,
            hs: &SubgroupHandle,
            ls: &SubgroupHandle,
            chosen: &mut Vec<usize>,
            spent: &mut u64,
        ) -> std::result::Result<bool, ()> {
            if *hs == e.subs[h] && ls.is_subgroup_of(&e.subs[kk]) {
                return Ok(true);
            }
            if left == 0 {
                return Ok(false);
            }
            for a in start..pool.len() {
                *spent += 1;
                if *spent > e.budget {
                    return Err(());
                }
                let (x, y) = (comps[pool[a]].0, comps[pool[a]].1);
                let nh = hs.intersect(&e.subs[x]);
                let nl = ls.intersect(&e.subs[y]);
                chosen.push(pool[a]);
                if rec(e, h, kk, comps, pool, a + 1, left - 1, &nh, &nl, chosen, spent)? {
                    return Ok(true);
                }
                chosen.pop();
            }
            Ok(false)
        }
        let full = SubgroupHandle::full(self.q.order());
        for r in 1..=self.r_max {
            let mut chosen = Vec::new();
            if rec(self, h, kk, comps, pool, 0, r, &full, &full, &mut chosen, spent)? && !chosen.is_empty() {
                return Ok(Some(chosen));
            }
        }
        Ok(None)
    }

    /// `min [H_i : H_i ∩ U]·β_{d−1}(U, V)` over admissible `(U, V)`.
    fn component(&mut self, d: usize, h: usize, l: usize) -> CompCost {
        if let Some(c) = self.comp_levels[d].get(&(h, l)) {
            return c.clone();
        }
        let s = self.subs.len();
        let mut out = CompCost {
            exact: None,
            hi: None,
            best: None,
            budget_exhausted: false,
        };
        for u in 0..s {
            let cu = self.core_idx(u, h);
            if !self.leq(cu, h) {
                continue;
            }
            let index = self.subs[h].order() / self.subs[h].intersect(&self.subs[u]).order();
            for v in 0..s {
                if !self.in_b[v] || !self.leq(u, v) {
                    continue;
                }
                let cv = self.core_idx(v, h);
                if !self.leq(cv, l) {
                    continue;
                }
                let inner = self.level(d - 1, u, v);
                out.budget_exhausted |= inner.budget_exhausted;
                let ex = times(index, inner.exact);
                let hi = times(index, inner.hi);
                if ex.is_some() && (out.exact.is_none() || ex < out.exact) {
                    out.exact = ex;
                }
                if hi.is_some() && (out.hi.is_none() || hi < out.hi) {
                    out.hi = hi;
                    out.best = Some((u, v));
                }
            }
        }
        self.comp_levels[d].insert((h, l), out.clone());
        out
    }

    /// Level-`d` value of `(H, K)`; `K` must lie in `B` and contain `H`.
    pub fn evaluate(&mut self, h: &SubgroupHandle, kk: &SubgroupHandle, d: usize) -> Result<BetaValue> {
        let (hi_, ki) = (self.index_of(h)?, self.index_of(kk)?);
        if !self.leq(hi_, ki) {
            return Err(Error::Precondition("beta needs H ≤ K".into()));
        }
        if !self.in_b[ki] {
            return Err(Error::Precondition("beta needs K to be the stabilizer of a Boolean function on Ω".into()));
        }
        let e = self.level(d, hi_, ki);
        let witness = e
            .witness
            .iter()
            .map(|&(a, b, c, dd)| Component {
                h: self.subs[a].clone(),
                u: self.subs[b].clone(),
                l: self.subs[c].clone(),
                v: self.subs[dd].clone(),
            })
            .collect();
        Ok(BetaValue {
            d,
            exact: e.exact,
            hi: e.hi,
            budget_exhausted: e.budget_exhausted,
            witness,
        })
    }
}

#[derive(Clone, Debug)]
pub struct BetaValue {
    pub d: usize,
    /// Exact minimum over all `r`.
    pub exact: Cost,
    /// Best value with at most `r_max` components.
    pub hi: Cost,
    pub budget_exhausted: bool,
    /// Components realising `hi` (empty at `d = 0` and for `K = Q`).
    pub witness: Vec<Component>,
}

/// `[lo, hi]` with `lo` from the `μ` bound.
#[derive(Clone, Debug, Serialize)]
pub struct BetaInterval {
    pub d: usize,
    pub r_max: usize,
    pub mu: usize,
    pub c: usize,
    pub lo: f64,
    pub lo_exact: Option<u128>,
    pub hi: String,
    pub hi_value: Cost,
    pub exact_unbounded: Cost,
    pub budget_exhausted: bool,
    pub witness_size: usize,
}

impl BetaInterval {
    pub fn new(v: &BetaValue, r_max: usize, mu: usize, c: usize) -> BetaInterval {
        let (lo, lo_exact) = if v.d == 0 {
            match v.exact {
                Some(x) => (x as f64, Some(x as u128)),
                None => (f64::INFINITY, None),
            }
        } else {
            super::mu_bound(c, mu, v.d)
        };
        BetaInterval {
            d: v.d,
            r_max,
            mu,
            c,
            lo,
            lo_exact,
            hi: fmt_cost(v.hi),
            hi_value: v.hi,
            exact_unbounded: v.exact,
            budget_exhausted: v.budget_exhausted,
            witness_size: v.witness.len(),
        }
    }

    pub fn sandwich(&self) -> bool {
        match self.hi_value {
            None => true,
            Some(h) => match self.lo_exact {
                Some(l) => l <= h as u128,
                None => self.lo <= h as f64 * (1.0 + super::BOUND_TOLERANCE),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;
    use crate::tuple::{Constraint, TupleSpec};
    use std::sync::Arc;

    fn c2_engine() -> BetaEngine {
        let g = Arc::new(named::cyclic(2));
        let q = TupleSpec::new(g, 2, Constraint::FullPower).unwrap().enumerate(&Ceilings::default()).unwrap();
        BetaEngine::new(q, 4, &Ceilings::default(), DEFAULT_MAX_SUBGROUPS).unwrap()
    }

    fn zero_sum(e: &BetaEngine) -> SubgroupHandle {
        let q = &e.q;
        SubgroupHandle::from_elements(q.order(), (0..q.order()).filter(|&x| q.tuple(x).iter().sum::<u32>() % 2 == 0))
    }

    #[test]
    fn c2_memberships() {
        let e = c2_engine();
        assert!(e.is_regular());
        assert_eq!(e.subgroups().len(), 5);
        let lits = e.subgroups().iter().filter(|s| e.is_literal_stabilizer(s)).count();
        assert_eq!(lits, 2);
        assert!(!e.is_literal_stabilizer(&zero_sum(&e)));
    }

    #[test]
    fn c2_zero_sum_levels() {
        let mut e = c2_engine();
        let z = zero_sum(&e);
        let full = SubgroupHandle::full(4);
        assert_eq!(e.evaluate(&z, &full, 1).unwrap().hi, Some(0));
        assert_eq!(e.evaluate(&z, &z, 0).unwrap().exact, None);
        let b1 = e.evaluate(&z, &z, 1).unwrap();
        assert_eq!((b1.exact, b1.hi), (None, None));
        let b2 = e.evaluate(&z, &z, 2).unwrap();
        assert_eq!((b2.exact, b2.hi), (Some(2), Some(2)));
        let check = check_good_tuple(&e, &z, &z, &b2.witness);
        assert!(check.all(), "{check:?}");
    }
}
