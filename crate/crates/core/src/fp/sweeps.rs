//! Exhaustive or seeded sweeps over the F_p and Z/q lemmas.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::zq::{log_q_floor, nonconstant_covers, shift_stabilizer, vh_extract, ZqPower};
use super::{all_subspaces, covers, min_weight_gap, mu_p, shrinkage_t_search, support, weight, FpSubspace};
use crate::error::Result;
use crate::group::{Ceilings, FiniteGroup};
use crate::subgroup::SubgroupHandle;
use crate::sweep::{SweepMode, WitnessReport};

fn pick<T: Clone>(items: &[T], rng: &mut ChaCha8Rng) -> T {
    items.choose(rng).expect("nonempty").clone()
}

/// `max(μ(H_1), μ(H_2)) ≥ μ(H_1 ∩ H_2)`.
pub fn intersection(p: u32, k: usize, mode: SweepMode) -> WitnessReport {
    let subs = all_subspaces(p, k);
    let mus: Vec<usize> = subs.iter().map(|s| mu_p(s).mu).collect();
    let mut rep = WitnessReport::new("fp-intersection", mode);
    let check = |rep: &mut WitnessReport, i: usize, j: usize| {
        let h = subs[i].intersect(&subs[j]);
        let mh = mu_p(&h).mu;
        let best = mus[i].max(mus[j]);
        rep.track_max("max_mu_h", mh as i64);
        rep.record(best >= mh, || {
            json!({"h1": subs[i], "h2": subs[j], "mu_h1": mus[i], "mu_h2": mus[j], "mu_h": mh})
        });
    };
    match mode {
        SweepMode::Exhaustive => {
            for i in 0..subs.len() {
                for j in i..subs.len() {
                    check(&mut rep, i, j);
                }
            }
        }
        SweepMode::Sampled { budget, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let idx: Vec<usize> = (0..subs.len()).collect();
            for _ in 0..budget {
                let (i, j) = (pick(&idx, &mut rng), pick(&idx, &mut rng));
                check(&mut rep, i, j);
            }
        }
    }
    rep.note("subspaces", subs.len());
    rep
}

/// Existence of `T` for every `(H, W, U)` with `H < W` codimension one and `U ≤ H`.
pub fn shrinkage(p: u32, k: usize, mode: SweepMode) -> Result<WitnessReport> {
    let subs = all_subspaces(p, k);
    let mut rep = WitnessReport::new("fp-shrinkage", mode);
    let mut triples = Vec::new();
    for h in &subs {
        for w in covers(h) {
            for u in subs.iter().filter(|u| u.is_subspace_of(h)) {
                triples.push((h.clone(), w.clone(), u.clone()));
            }
        }
    }
    let chosen: Vec<usize> = match mode {
        SweepMode::Exhaustive => (0..triples.len()).collect(),
        SweepMode::Sampled { budget, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let idx: Vec<usize> = (0..triples.len()).collect();
            (0..budget).map(|_| pick(&idx, &mut rng)).collect()
        }
    };
    for i in chosen {
        let (h, w, u) = &triples[i];
        let found = shrinkage_t_search(h, w, u)?;
        if let Some(t) = &found {
            rep.track_max("max_target_gap", t.target as i64);
        }
        rep.record(found.is_some(), || json!({"h": h, "w": w, "u": u}));
    }
    Ok(rep)
}

/// For every cover `V < W` and every minimum-weight `x ∈ V^⊥ ∖ W^⊥`: no
/// `y ∈ V^⊥ ∖ ⟨x⟩` has `Supp(y) ⊆ Supp(x)`, and
/// `π_{Supp(x)}(V) = ⟨π_{Supp(x)}(x)⟩^⊥`.
pub fn perp_unique(p: u32, k: usize, mode: SweepMode) -> Result<WitnessReport> {
    let subs = all_subspaces(p, k);
    let mut pairs = Vec::new();
    for v in &subs {
        for w in covers(v) {
            pairs.push((v.clone(), w));
        }
    }
    let chosen: Vec<usize> = match mode {
        SweepMode::Exhaustive => (0..pairs.len()).collect(),
        SweepMode::Sampled { budget, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let idx: Vec<usize> = (0..pairs.len()).collect();
            (0..budget).map(|_| pick(&idx, &mut rng)).collect()
        }
    };
    let mut rep = WitnessReport::new("perp-unique", mode);
    for i in chosen {
        let (v, w) = &pairs[i];
        let gap = min_weight_gap(v, w)?.weight;
        let vp = v.perp().elements();
        let wp = w.perp();
        for x in vp.iter().filter(|x| !wp.contains(x) && weight(x) == gap) {
            let line = FpSubspace::span(p, k, [x.clone()])?;
            let sx = support(x);
            let offender = vp
                .iter()
                .find(|y| !line.contains(y) && support(y).iter().all(|c| sx.contains(c)));
            let proj = v.project(&sx);
            let px: Vec<u32> = sx.iter().map(|&c| x[c]).collect();
            let expect = FpSubspace::span(p, sx.len(), [px])?.perp();
            let ok = offender.is_none() && proj == expect;
            rep.record(ok, || {
                json!({"v": v, "w": w, "x": x, "offender": offender, "projection": proj, "expected": expect})
            });
        }
    }
    Ok(rep)
}

/// `|H| ≥ q^m ⟹ dim V_H ≥ m` over every subgroup of `(Z/q)^k`.
pub fn dim_bound(q: u32, k: usize, ceilings: &Ceilings) -> Result<WitnessReport> {
    let g = ZqPower::new(q, k, ceilings)?;
    let subs = g.all_subgroups(ceilings)?;
    let mut rep = WitnessReport::new("dim-bound", SweepMode::Exhaustive);
    let mut tight = 0i64;
    for h in &subs {
        let m = log_q_floor(q, h.order()) as usize;
        let dim = vh_extract(&g, h).dim();
        if dim == m {
            tight += 1;
        }
        rep.record(dim >= m, || {
            json!({"elements": h.elements().map(|i| g.vector(i)).collect::<Vec<_>>(), "m": m, "dim_vh": dim})
        });
    }
    rep.note("subgroups", subs.len());
    rep.note("tight_instances", tight);
    Ok(rep)
}

/// Every coordinate function `M_{i,a,b}` on circulant inputs: for each
/// `V ≤ C_p^k` fixing it and each cover `W` on which it is nonconstant,
/// `μ(V, W) ≤ 1`.
pub fn literal_mu(q: u32, k: usize, ceilings: &Ceilings) -> Result<WitnessReport> {
    let g = ZqPower::new(q, k, ceilings)?;
    let mut rep = WitnessReport::new("literal-mu", SweepMode::Exhaustive);
    let subs = all_subspaces(g.p, k);
    for i in 0..k {
        for a in 0..q {
            for b in 0..q {
                // the shift by x_i sends b to b + x_i
                let values: Vec<bool> = (0..g.order()).map(|x| (g.vector(x)[i] + b) % q == a).collect();
                let stab = shift_stabilizer(&g, &values);
                let v_stab = vh_extract(&g, &stab);
                rep.track_max("stab_mu", mu_p(&v_stab).mu as i64);
                for v in subs.iter().filter(|v| v.is_subspace_of(&v_stab)) {
                    for w in nonconstant_covers(&g, v, &values) {
                        let gap = min_weight_gap(v, &w)?.weight;
                        rep.record(gap <= 1, || json!({"var": [i + 1, a + 1, b + 1], "v": v, "w": w, "mu": gap}));
                    }
                }
            }
        }
    }
    let constant = shift_stabilizer(&g, &vec![true; g.order()]);
    let full = vh_extract(&g, &constant);
    rep.record(constant == SubgroupHandle::full(g.order()) && mu_p(&full).mu == 0, || {
        json!({"constant": "stabilizer or mu wrong"})
    });
    Ok(rep)
}
