//! Seeded sweeps of the nonabelian intersection, shrinkage and literal
//! lemmas over `Q = {g_1 = g_{2k} = 1} ≤ G^{2k}`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::beta::OmegaAction;
use super::{edge_set, mu_nonabelian, EdgeGraph};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::goursat::enumerate_product_subgroups;
use crate::group::{Ceilings, FiniteGroup, GroupTable};
use crate::params::{is_simple, min_faithful_degree};
use crate::subgroup::{closure, core, join_with, SubgroupHandle};
use crate::sweep::{SweepMode, WitnessReport};
use crate::tuple::{Constraint, TupleGroup, TupleSpec};
use crate::word;

/// Outcome of one candidate instance.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// A hypothesis failed; the string names it.
    Excluded(&'static str),
    Pass,
    Fail(Value),
}

impl Verdict {
    pub fn apply(self, rep: &mut WitnessReport) {
        match self {
            Verdict::Excluded(_) => rep.exclude(),
            Verdict::Pass => rep.pass(),
            Verdict::Fail(v) => rep.fail(v),
        }
    }
}

fn mu(q: &TupleGroup, h: &SubgroupHandle, kk: &SubgroupHandle) -> Result<usize> {
    mu_nonabelian(&q.subgroup(h), &q.subgroup(kk), q.order() as u128)
}

fn edges(q: &TupleGroup, h: &SubgroupHandle) -> Result<EdgeGraph> {
    edge_set(&q.subgroup(h))
}

/// One instance of the intersection lemma, in both its edge-set form and
/// its `μ(H_i, L_i) ≥ μ(H, K)` form.
pub fn intersection_instance(
    action: &OmegaAction,
    h: &SubgroupHandle,
    kk: &SubgroupHandle,
    hs: &[SubgroupHandle],
    ls: &[SubgroupHandle],
) -> Result<Verdict> {
    let q = &action.q;
    if hs.is_empty() || hs.len() != ls.len() {
        return Ok(Verdict::Excluded("family shape"));
    }
    if !h.is_subgroup_of(kk) || !action.in_b(kk)? {
        return Ok(Verdict::Excluded("K"));
    }
    let full = SubgroupHandle::full(q.order());
    let (mut hcap, mut lcap) = (full.clone(), full);
    for (hi, li) in hs.iter().zip(ls) {
        if !hi.is_subgroup_of(li) {
            return Ok(Verdict::Excluded("H_i ≤ L_i"));
        }
        if !action.in_n(li) {
            return Ok(Verdict::Excluded("L_i in N"));
        }
        hcap = hcap.intersect(hi);
        lcap = lcap.intersect(li);
    }
    if hcap != *h {
        return Ok(Verdict::Excluded("intersection of H_i"));
    }
    if !lcap.is_subgroup_of(kk) {
        return Ok(Verdict::Excluded("intersection of L_i"));
    }
    let target = mu(q, h, kk)?;
    let comp_edges: Vec<EdgeGraph> = hs
        .iter()
        .zip(ls)
        .map(|(hi, li)| Ok(edges(q, hi)?.intersect(&edges(q, li)?)))
        .collect::<Result<_>>()?;
    let mus: Vec<usize> = hs.iter().zip(ls).map(|(hi, li)| mu(q, hi, li)).collect::<Result<_>>()?;
    let mut ok = mus.iter().any(|&m| m >= target);
    if !kk.is_full() {
        let joint = edges(q, h)?.intersect(&edges(q, kk)?);
        for (a, b) in joint.components() {
            ok &= comp_edges.iter().any(|e| (a..b).all(|j| e.edges[j]));
        }
    }
    Ok(if ok {
        Verdict::Pass
    } else {
        Verdict::Fail(json!({
            "mu_h_k": target,
            "orders_h_i": hs.iter().map(|x| x.order()).collect::<Vec<_>>(),
            "orders_l_i": ls.iter().map(|x| x.order()).collect::<Vec<_>>(),
            "mu_i": mus,
        }))
    })
}

/// Smallest `m ≥ 1` with `index ≤ n^{m−1}`.
pub fn shrink_m(index: usize, n: usize) -> usize {
    let mut m = 1;
    let mut p = 1u128;
    while p < index as u128 {
        p *= n as u128;
        m += 1;
    }
    m
}

/// One instance of `μ(U,V) ≥ μ(U∩H,V) ≥ μ(H,L)/m` with `[H:H∩U] ≤ n^{m−1}`.
pub fn shrinkage_instance(
    action: &OmegaAction,
    n: usize,
    u: &SubgroupHandle,
    v: &SubgroupHandle,
    h: &SubgroupHandle,
    l: &SubgroupHandle,
) -> Result<Verdict> {
    let q = &action.q;
    if !u.is_subgroup_of(v) || !h.is_subgroup_of(l) {
        return Ok(Verdict::Excluded("containments"));
    }
    if !action.in_b(v)? || !action.in_n(l) {
        return Ok(Verdict::Excluded("memberships"));
    }
    if !core(q, u, h).is_subgroup_of(h) {
        return Ok(Verdict::Excluded("core of U"));
    }
    if !core(q, v, h).is_subgroup_of(l) {
        return Ok(Verdict::Excluded("core of V"));
    }
    let uh = u.intersect(h);
    let m = shrink_m(h.order() / uh.order(), n);
    let (a, b, c) = (mu(q, u, v)?, mu(q, &uh, v)?, mu(q, h, l)?);
    let ok = a >= b && b * m >= c;
    Ok(if ok {
        Verdict::Pass
    } else {
        Verdict::Fail(json!({
            "orders": {"u": u.order(), "v": v.order(), "h": h.order(), "l": l.order()},
            "m": m, "mu_u_v": a, "mu_uh_v": b, "mu_h_l": c,
        }))
    })
}

/// `Q` for `k = 2` with its subgroups and the action on `Ω = G²`.
pub struct PairSetting {
    pub action: OmegaAction,
    pub subs: Vec<SubgroupHandle>,
    /// Subgroups comparable with the diagonal, where edges live.
    pub near_diag: Vec<usize>,
    pub n: usize,
}

impl PairSetting {
    pub fn new(g: Arc<GroupTable>, ceilings: &Ceilings) -> Result<PairSetting> {
        if g.is_abelian() || !is_simple(&g, ceilings)? {
            return Err(Error::Precondition("needs a nonabelian simple group".into()));
        }
        let n = min_faithful_degree(&g, ceilings)?;
        let q = TupleSpec::new(g.clone(), 2, Constraint::QLeftRight)?.enumerate(ceilings)?;
        let subs = enumerate_product_subgroups(&q, ceilings)?;
        let order = g.order();
        let diag = SubgroupHandle::from_elements(q.order(), (0..order).map(|a| a * order + a));
        let near_diag = (0..subs.len())
            .filter(|&i| subs[i].is_subgroup_of(&diag) || diag.is_subgroup_of(&subs[i]))
            .collect();
        let action = OmegaAction::new(q, ceilings, false)?;
        Ok(PairSetting {
            action,
            subs,
            near_diag,
            n,
        })
    }

    pub fn q(&self) -> &TupleGroup {
        &self.action.q
    }

    fn random_subgroup(&self, rng: &mut ChaCha8Rng) -> SubgroupHandle {
        let i = if rng.gen_bool(0.5) {
            *self.near_diag.choose(rng).expect("nonempty")
        } else {
            rng.gen_range(0..self.subs.len())
        };
        self.subs[i].clone()
    }

    fn maybe_grow(&self, h: &SubgroupHandle, rng: &mut ChaCha8Rng) -> SubgroupHandle {
        if rng.gen_bool(0.5) {
            h.clone()
        } else {
            join_with(self.q(), h, rng.gen_range(0..self.q().order()))
        }
    }

    fn random_inside(&self, h: &SubgroupHandle, rng: &mut ChaCha8Rng) -> SubgroupHandle {
        let els: Vec<usize> = h.elements().collect();
        let count = rng.gen_range(0..=2);
        let gens: Vec<usize> = (0..count).map(|_| *els.choose(rng).expect("nonempty")).collect();
        closure(self.q(), &gens)
    }
}

fn sampled_only(mode: SweepMode) -> Result<(usize, u64)> {
    match mode {
        SweepMode::Sampled { budget, seed } => Ok((budget, seed)),
        SweepMode::Exhaustive => Err(Error::Precondition(
            "families of subgroups are unbounded; give a budget and seed".into(),
        )),
    }
}

pub fn intersection(ps: &PairSetting, mode: SweepMode) -> Result<WitnessReport> {
    let (budget, seed) = sampled_only(mode)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = WitnessReport::new("intersection", mode);
    let q = ps.q();
    for _ in 0..budget {
        let h = ps.random_subgroup(&mut rng);
        let r = rng.gen_range(1..=3);
        let mut hs = Vec::with_capacity(r);
        let mut ls = Vec::with_capacity(r);
        for i in 0..r {
            // the first component pins the intersection down to H half the time
            let hi = if i == 0 && rng.gen_bool(0.5) { h.clone() } else { ps.maybe_grow(&h, &mut rng) };
            let li = ps.maybe_grow(&hi, &mut rng);
            hs.push(hi);
            ls.push(li);
        }
        let hcap = hs.iter().skip(1).fold(hs[0].clone(), |a, b| a.intersect(b));
        let lcap = ls.iter().skip(1).fold(ls[0].clone(), |a, b| a.intersect(b));
        let kk = ps.maybe_grow(&lcap, &mut rng);
        let v = intersection_instance(&ps.action, &h, &kk, &hs, &ls)?;
        if v == Verdict::Pass {
            rep.track_max("max_mu_h_k", mu(q, &hcap, &kk)? as i64);
        }
        v.apply(&mut rep);
    }
    rep.note("subgroups", ps.subs.len());
    Ok(rep)
}

pub fn shrinkage(ps: &PairSetting, mode: SweepMode) -> Result<WitnessReport> {
    let (budget, seed) = sampled_only(mode)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = WitnessReport::new("shrinkage", mode);
    let q = ps.q();
    for _ in 0..budget {
        let h = ps.random_subgroup(&mut rng);
        let l = ps.maybe_grow(&h, &mut rng);
        let u = if rng.gen_bool(0.7) { ps.random_inside(&h, &mut rng) } else { ps.random_subgroup(&mut rng) };
        let v = ps.maybe_grow(&u, &mut rng);
        let verdict = shrinkage_instance(&ps.action, ps.n, &u, &v, &h, &l)?;
        if verdict == Verdict::Pass {
            rep.track_max("max_index", (h.order() / u.intersect(&h).order()) as i64);
            rep.track_max("max_mu_h_l", mu(q, &h, &l)? as i64);
        }
        verdict.apply(&mut rep);
    }
    rep.note("n", ps.n);
    Ok(rep)
}

/// `μ(Stab_Q(x_v), Stab_Q(χ_v)) ≤ 1` for every variable `v`.
pub fn literal(ps: &PairSetting, ceilings: &Ceilings) -> Result<WitnessReport> {
    let q = ps.q();
    let n = q.base().degree();
    let mut rep = WitnessReport::new("literal", SweepMode::Exhaustive);
    for v in 0..(2 * n * n) as u32 {
        let f = Formula::pos(v);
        let h = word::syntactic_stabilizer(&f, q);
        let kk = word::semantic_stabilizer(&f, q, ceilings.elements)?;
        let m = mu(q, &h, &kk)?;
        rep.track_max("max_mu", m as i64);
        rep.record(h.is_subgroup_of(&kk) && m <= 1, || {
            let (i, a, b) = word::var_coords(n, v);
            json!({"var": [i + 1, a + 1, b + 1], "mu": m})
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shrink_m_values() {
        assert_eq!(shrink_m(1, 5), 1);
        assert_eq!(shrink_m(5, 5), 2);
        assert_eq!(shrink_m(6, 5), 3);
        assert_eq!(shrink_m(25, 5), 3);
    }

    #[test]
    fn non_members_of_n_are_excluded() {
        use crate::group::named;
        let c = Ceilings::default();
        let g = Arc::new(named::cyclic(2));
        let q = TupleSpec::new(g, 3, Constraint::QLeftRight).unwrap().enumerate(&c).unwrap();
        let action = OmegaAction::new(q, &c, true).unwrap();
        assert!(!action.is_regular());
        let subs = crate::subgroup::enumerate_subgroups(&action.q, &c).unwrap();
        let bad = subs.iter().find(|s| !action.in_n(s)).expect("some subgroup is not a stabilizer").clone();
        let full = SubgroupHandle::full(action.q.order());
        let v = intersection_instance(&action, &bad, &full, &[bad.clone()], &[bad.clone()]).unwrap();
        assert_eq!(v, Verdict::Excluded("L_i in N"));
    }
}
