//! Finite permutation groups enumerated by closure.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Enumeration limits shared by every brute-force routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Ceilings {
    pub elements: usize,
    pub subgroups: usize,
}

impl Default for Ceilings {
    fn default() -> Self {
        Ceilings {
            elements: 200_000,
            subgroups: 20_000,
        }
    }
}

/// A group whose elements are numbered `0..order`, with `0` the identity.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    /// Index of `a ∘ b`.
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn generators(&self) -> Vec<usize>;

    fn identity(&self) -> usize {
        0
    }

    fn conj(&self, h: usize, x: usize) -> usize {
        // h^{-1} x h
        self.mul(self.inv(h), self.mul(x, h))
    }

    fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

const TABLE_LIMIT: usize = 1024;

#[derive(Clone)]
pub struct GroupTable {
    degree: usize,
    generators: Vec<Perm>,
    generator_idx: Vec<usize>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .field("generators", &self.generators)
            .finish()
    }
}

impl GroupTable {
    /// Closure of `generators` under composition. Elements are sorted by
    /// image list, which puts the identity at index 0.
    pub fn generate(degree: usize, generators: Vec<Perm>, ceiling: usize) -> Result<GroupTable> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut order = vec![id];
        let mut head = 0;
        while head < order.len() {
            let x = order[head].clone();
            head += 1;
            for g in &generators {
                let y = x.compose(g);
                if !seen.contains_key(&y) {
                    if order.len() >= ceiling {
                        return Err(Error::Ceiling {
                            what: "group order",
                            ceiling,
                        });
                    }
                    seen.insert(y.clone(), ());
                    order.push(y);
                }
            }
        }
        order.sort();
        let index: HashMap<Perm, usize> =
            order.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let inverse = order.iter().map(|p| index[&p.inverse()] as u32).collect();
        let generator_idx = generators.iter().map(|g| index[g]).collect();
        let n = order.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &order {
                for b in &order {
                    t.push(index[&a.compose(b)] as u32);
                }
            }
            t
        });
        Ok(GroupTable {
            degree,
            generators,
            generator_idx,
            elements: order,
            index,
            inverse,
            table,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_perms(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// Image of point `x` (zero-based) under element `g`.
    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.elements[g].apply(x)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generator_idx;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True for `⟨(1 2 ... n)⟩` acting on `n` points, the layout the
    /// circulant encodings assume.
    pub fn is_standard_cyclic(&self) -> bool {
        let n = self.degree;
        if self.order() != n {
            return false;
        }
        let shift: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        Perm::from_images(shift).map(|p| self.contains(&p)).unwrap_or(false)
    }

    /// For the standard cyclic group: the element `x ↦ x + t (mod n)`.
    pub fn shift_element(&self, t: usize) -> usize {
        let n = self.degree;
        let images = (0..n).map(|i| ((i + t) % n) as u32).collect();
        self.index[&Perm::from_images(images).expect("shift is a permutation")]
    }
}

impl FiniteGroup for GroupTable {
    fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    fn generators(&self) -> Vec<usize> {
        self.generator_idx.clone()
    }
}

pub fn generate_group(degree: usize, generators: Vec<Perm>, ceilings: &Ceilings) -> Result<GroupTable> {
    GroupTable::generate(degree, generators, ceilings.elements)
}

/// Small named groups used by examples and tests.
pub mod named {
    use super::*;

    fn build(n: usize, gens: Vec<Perm>) -> GroupTable {
        GroupTable::generate(n, gens, Ceilings::default().elements).expect("named group within ceiling")
    }

    pub fn cyclic(n: usize) -> GroupTable {
        let images = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        build(n, vec![Perm::from_images(images).unwrap()])
    }

    pub fn symmetric(n: usize) -> GroupTable {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(cyclic_perm(n));
            gens.push(Perm::from_cycles(n, "(1 2)").unwrap());
        }
        build(n, gens)
    }

    pub fn alternating(n: usize) -> GroupTable {
        let gens = (3..=n)
            .map(|k| Perm::from_cycles(n, &format!("(1 2 {k})")).unwrap())
            .collect();
        build(n, gens)
    }

    /// `GL(m, 2)` acting on the `2^m - 1` nonzero vectors; vector `v` is point `v`.
    pub fn gl2(m: usize) -> GroupTable {
        let npts = (1usize << m) - 1;
        let mut gens = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                // transvection: bit i ^= bit j
                let images = (1..=npts)
                    .map(|v| {
                        let w = if v >> j & 1 == 1 { v ^ (1 << i) } else { v };
                        (w - 1) as u32
                    })
                    .collect();
                gens.push(Perm::from_images(images).unwrap());
            }
        }
        build(npts, gens)
    }

    fn cyclic_perm(n: usize) -> Perm {
        Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap()
    }
}
