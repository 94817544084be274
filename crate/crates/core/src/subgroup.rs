//! Subgroups as bitsets over a parent's element numbering.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Ceilings, FiniteGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupHandle {
    bits: FixedBitSet,
}

impl SubgroupHandle {
    pub fn from_bits(bits: FixedBitSet) -> SubgroupHandle {
        SubgroupHandle { bits }
    }

    pub fn from_elements(parent_order: usize, elems: impl IntoIterator<Item = usize>) -> SubgroupHandle {
        let mut bits = FixedBitSet::with_capacity(parent_order);
        for e in elems {
            bits.insert(e);
        }
        SubgroupHandle { bits }
    }

    pub fn trivial(parent_order: usize) -> SubgroupHandle {
        SubgroupHandle::from_elements(parent_order, [0])
    }

    pub fn full(parent_order: usize) -> SubgroupHandle {
        let mut bits = FixedBitSet::with_capacity(parent_order);
        bits.insert_range(..);
        SubgroupHandle { bits }
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn parent_order(&self) -> usize {
        self.bits.len()
    }

    pub fn order(&self) -> usize {
        self.bits.count_ones(..)
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent_order()
    }

    pub fn intersect(&self, other: &SubgroupHandle) -> SubgroupHandle {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        SubgroupHandle { bits }
    }

    /// `[other : self]`, assuming `self ≤ other`.
    pub fn index_in(&self, other: &SubgroupHandle) -> usize {
        other.order() / self.order()
    }
}

/// Subgroup generated by `gens`.
pub fn closure<G: FiniteGroup + ?Sized>(g: &G, gens: &[usize]) -> SubgroupHandle {
    let mut bits = FixedBitSet::with_capacity(g.order());
    bits.insert(g.identity());
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !bits.put(y) {
                queue.push(y);
            }
        }
    }
    SubgroupHandle { bits }
}

/// `⟨S, x⟩`, grown one left coset of `S` at a time.
pub fn join_with<G: FiniteGroup + ?Sized>(g: &G, s: &SubgroupHandle, x: usize) -> SubgroupHandle {
    if s.contains(x) {
        return s.clone();
    }
    let s_elems: Vec<usize> = s.elements().collect();
    let mut bits = s.bits.clone();
    let mut list = s_elems.clone();
    let mut i = 0;
    while i < list.len() {
        let y = g.mul(list[i], x);
        if !bits.contains(y) {
            for &t in &s_elems {
                let z = g.mul(y, t);
                bits.insert(z);
                list.push(z);
            }
        }
        i += 1;
    }
    SubgroupHandle { bits }
}

pub fn join<G: FiniteGroup + ?Sized>(g: &G, a: &SubgroupHandle, b: &SubgroupHandle) -> SubgroupHandle {
    let mut acc = a.clone();
    for x in generating_set(g, b) {
        acc = join_with(g, &acc, x);
    }
    acc
}

/// A small generating set, chosen greedily in element order.
pub fn generating_set<G: FiniteGroup + ?Sized>(g: &G, h: &SubgroupHandle) -> Vec<usize> {
    let mut cur = SubgroupHandle::trivial(g.order());
    let mut gens = Vec::new();
    for x in h.elements() {
        if !cur.contains(x) {
            gens.push(x);
            cur = join_with(g, &cur, x);
            if cur.order() == h.order() {
                break;
            }
        }
    }
    gens
}

/// Brute-force subgroup test: identity, products and inverses.
pub fn is_subgroup<G: FiniteGroup + ?Sized>(g: &G, h: &SubgroupHandle) -> bool {
    if !h.contains(g.identity()) {
        return false;
    }
    let elems: Vec<usize> = h.elements().collect();
    elems.iter().all(|&a| h.contains(g.inv(a)))
        && elems
            .iter()
            .all(|&a| elems.iter().all(|&b| h.contains(g.mul(a, b))))
}

pub fn conjugate<G: FiniteGroup + ?Sized>(g: &G, u: &SubgroupHandle, x: usize) -> SubgroupHandle {
    SubgroupHandle::from_elements(g.order(), u.elements().map(|e| g.conj(x, e)))
}

/// `n ◁ h`, assuming `n ≤ h`.
pub fn is_normal_in<G: FiniteGroup + ?Sized>(g: &G, n: &SubgroupHandle, h: &SubgroupHandle) -> bool {
    let gens = generating_set(g, h);
    let n_gens = generating_set(g, n);
    gens.iter()
        .all(|&t| n_gens.iter().all(|&x| n.contains(g.conj(t, x))))
}

/// `⋂_{h ∈ H} h⁻¹ U h`: the largest subset of `U` closed under conjugation by `H`.
pub fn core<G: FiniteGroup + ?Sized>(g: &G, u: &SubgroupHandle, h: &SubgroupHandle) -> SubgroupHandle {
    let gens = generating_set(g, h);
    let mut cur = u.clone();
    loop {
        let mut next = cur.clone();
        for x in cur.elements() {
            if gens.iter().any(|&t| !cur.contains(g.conj(t, x))) {
                next.bits.set(x, false);
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Every subgroup exactly once: start from the trivial group and join with
/// single elements until nothing new appears.
pub fn enumerate_subgroups<G: FiniteGroup + ?Sized>(g: &G, ceilings: &Ceilings) -> Result<Vec<SubgroupHandle>> {
    let n = g.order();
    if n > ceilings.elements {
        return Err(Error::Ceiling {
            what: "group order for subgroup enumeration",
            ceiling: ceilings.elements,
        });
    }
    let mut list = vec![SubgroupHandle::trivial(n)];
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    seen.insert(list[0].bits.clone(), 0);
    let mut i = 0;
    while i < list.len() {
        let s = list[i].clone();
        let s_elems: Vec<usize> = s.elements().collect();
        let mut tried = s.bits.clone();
        for x in 0..n {
            if tried.contains(x) {
                continue;
            }
            for &t in &s_elems {
                tried.insert(g.mul(x, t));
                tried.insert(g.mul(t, x));
            }
            let j = join_with(g, &s, x);
            if !seen.contains_key(&j.bits) {
                if list.len() >= ceilings.subgroups {
                    return Err(Error::Ceiling {
                        what: "subgroup count",
                        ceiling: ceilings.subgroups,
                    });
                }
                seen.insert(j.bits.clone(), list.len());
                list.push(j);
            }
        }
        i += 1;
    }
    list.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(list)
}

pub fn normal_subgroups<G: FiniteGroup + ?Sized>(
    g: &G,
    subs: &[SubgroupHandle],
    h: &SubgroupHandle,
) -> Vec<SubgroupHandle> {
    subs.iter()
        .filter(|m| m.is_subgroup_of(h) && is_normal_in(g, m, h))
        .cloned()
        .collect()
}

/// Orbit of `point` and its stabilizer under `action(element, point)`.
pub fn orbit_and_stabilizer<G, F>(g: &G, action: F, point: usize) -> (BTreeSet<usize>, SubgroupHandle)
where
    G: FiniteGroup + ?Sized,
    F: Fn(usize, usize) -> usize,
{
    let mut orbit = BTreeSet::new();
    let mut stab = FixedBitSet::with_capacity(g.order());
    for e in 0..g.order() {
        let y = action(e, point);
        orbit.insert(y);
        if y == point {
            stab.insert(e);
        }
    }
    (orbit, SubgroupHandle::from_bits(stab))
}

/// A group given by its Cayley table, used for quotients.
#[derive(Clone, Debug)]
pub struct TableGroup {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    gens: Vec<usize>,
}

impl TableGroup {
    pub fn from_table(n: usize, table: Vec<u32>) -> TableGroup {
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("inverse exists") as u32)
            .collect();
        let mut t = TableGroup {
            n,
            table,
            inverse,
            gens: Vec::new(),
        };
        let full = SubgroupHandle::full(n);
        t.gens = generating_set(&t, &full);
        t
    }

    pub fn of<G: FiniteGroup + ?Sized>(g: &G) -> TableGroup {
        let n = g.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(g.mul(a, b) as u32);
            }
        }
        TableGroup::from_table(n, table)
    }
}

impl FiniteGroup for TableGroup {
    fn order(&self) -> usize {
        self.n
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

/// `H / M` for `M ◁ H`. Cosets are numbered by their least element, so the
/// identity coset is 0.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: TableGroup,
    /// Coset number for each element of `H`; `u32::MAX` outside `H`.
    pub coset_of: Vec<u32>,
    pub reps: Vec<usize>,
}

pub fn quotient<G: FiniteGroup + ?Sized>(g: &G, h: &SubgroupHandle, m: &SubgroupHandle) -> Quotient {
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    let m_elems: Vec<usize> = m.elements().collect();
    for x in h.elements() {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &t in &m_elems {
            coset_of[g.mul(x, t)] = id;
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[g.mul(a, b)]);
        }
    }
    Quotient {
        group: TableGroup::from_table(q, table),
        coset_of,
        reps,
    }
}

/// All isomorphisms `a → b`, as image tables.
pub fn isomorphisms<A, B>(a: &A, b: &B) -> Vec<Vec<usize>>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    let n = a.order();
    if n != b.order() {
        return Vec::new();
    }
    let gens = a.generators();
    let a_ord: Vec<usize> = gens.iter().map(|&x| a.element_order(x)).collect();
    let b_ord: Vec<usize> = (0..n).map(|y| b.element_order(y)).collect();
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    extend_iso(a, b, &gens, &a_ord, &b_ord, 0, &mut images, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend_iso<A, B>(
    a: &A,
    b: &B,
    gens: &[usize],
    a_ord: &[usize],
    b_ord: &[usize],
    depth: usize,
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    if depth == gens.len() {
        if let Some(map) = homomorphism_from_generators(a, b, gens, images) {
            let mut hit = vec![false; b.order()];
            if map.iter().all(|&y| !std::mem::replace(&mut hit[y], true)) {
                out.push(map);
            }
        }
        return;
    }
    for y in 0..b.order() {
        if b_ord[y] == a_ord[depth] {
            images[depth] = y;
            extend_iso(a, b, gens, a_ord, b_ord, depth + 1, images, out);
        }
    }
}

/// Extend generator images to a map on all of `a`; `None` if inconsistent.
pub fn homomorphism_from_generators<A, B>(a: &A, b: &B, gens: &[usize], images: &[usize]) -> Option<Vec<usize>>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    map[a.identity()] = b.identity();
    let mut queue = vec![a.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = a.mul(x, s);
            let fy = b.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    // every edge x -> x·s was checked, so map(x·s) = map(x)·t everywhere
    (queue.len() == n).then_some(map)
}
