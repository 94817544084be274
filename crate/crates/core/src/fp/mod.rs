//! Subspaces of `F_p^k`, orthogonal complements, and the minimum-weight
//! witness `μ(V, W) = min_{v ∈ V^⊥ ∖ W^⊥} |v|`.

pub mod sweeps;
pub mod zq;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::is_prime;

pub type FpVector = Vec<u32>;

pub fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

pub fn support(v: &[u32]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i).collect()
}

pub fn dot(p: u32, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0u64, |acc, (&x, &y)| (acc + x as u64 * y as u64) % p as u64) as u32
}

fn inv_mod(p: u32, a: u32) -> u32 {
    // p is prime, so a^{p-2}
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// All of `F_p^k` in lexicographic order.
pub fn all_vectors(p: u32, k: usize) -> Vec<FpVector> {
    let total = (p as usize).pow(k as u32);
    (0..total)
        .map(|mut i| {
            let mut v = vec![0u32; k];
            for j in (0..k).rev() {
                v[j] = (i % p as usize) as u32;
                i /= p as usize;
            }
            v
        })
        .collect()
}

/// A subspace held as its reduced row-echelon basis, so equality is
/// basis equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FpSubspace {
    pub p: u32,
    pub k: usize,
    pub rows: Vec<FpVector>,
}

impl fmt::Debug for FpSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}^{}<", self.p, self.k)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r:?}")?;
        }
        write!(f, ">")
    }
}

impl FpSubspace {
    pub fn span(p: u32, k: usize, vectors: impl IntoIterator<Item = FpVector>) -> Result<FpSubspace> {
        if !is_prime(p as usize) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let mut rows: Vec<FpVector> = Vec::new();
        for v in vectors {
            if v.len() != k {
                return Err(Error::Invalid(format!("vector of length {} in F_p^{k}", v.len())));
            }
            rows.push(v.into_iter().map(|x| x % p).collect());
        }
        Ok(FpSubspace::from_rows_reduced(p, k, rows))
    }

    fn from_rows_reduced(p: u32, k: usize, mut rows: Vec<FpVector>) -> FpSubspace {
        let pp = p as u64;
        let mut r = 0;
        for c in 0..k {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let s = inv_mod(p, rows[r][c]) as u64;
            for x in rows[r].iter_mut() {
                *x = (*x as u64 * s % pp) as u32;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c] as u64;
                    for j in 0..k {
                        rows[i][j] = ((rows[i][j] as u64 + pp * pp - f * rows[r][j] as u64) % pp) as u32;
                    }
                }
            }
            r += 1;
        }
        rows.truncate(r);
        FpSubspace { p, k, rows }
    }

    pub fn zero(p: u32, k: usize) -> FpSubspace {
        FpSubspace { p, k, rows: vec![] }
    }

    pub fn full(p: u32, k: usize) -> FpSubspace {
        let rows = (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect();
        FpSubspace { p, k, rows }
    }

    /// `{x : Σ x_i = 0}`.
    pub fn zero_sum(p: u32, k: usize) -> FpSubspace {
        let rows = (0..k.saturating_sub(1))
            .map(|i| {
                let mut v = vec![0u32; k];
                v[i] = 1;
                v[k - 1] = p - 1;
                v
            })
            .collect();
        FpSubspace::from_rows_reduced(p, k, rows)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.k
    }

    fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("RREF rows are nonzero"))
            .collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let pp = self.p as u64;
        let mut w: Vec<u64> = v.iter().map(|&x| (x % self.p) as u64).collect();
        for (r, c) in self.rows.iter().zip(self.pivots()) {
            let f = w[c];
            if f != 0 {
                for j in 0..self.k {
                    w[j] = (w[j] + pp * pp - f * r[j] as u64) % pp;
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &FpSubspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// `{y : y·v = 0 for all v ∈ V}`.
    pub fn perp(&self) -> FpSubspace {
        let pivots = self.pivots();
        let free: Vec<usize> = (0..self.k).filter(|c| !pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u32; self.k];
                v[f] = 1;
                for (r, &c) in self.rows.iter().zip(&pivots) {
                    v[c] = (self.p - r[f]) % self.p;
                }
                v
            })
            .collect();
        FpSubspace::from_rows_reduced(self.p, self.k, rows)
    }

    pub fn sum(&self, other: &FpSubspace) -> FpSubspace {
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        FpSubspace::from_rows_reduced(self.p, self.k, rows)
    }

    pub fn intersect(&self, other: &FpSubspace) -> FpSubspace {
        self.perp().sum(&other.perp()).perp()
    }

    pub fn with_vector(&self, v: &[u32]) -> FpSubspace {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        FpSubspace::from_rows_reduced(self.p, self.k, rows)
    }

    /// Every element, lexicographically sorted.
    pub fn elements(&self) -> Vec<FpVector> {
        let p = self.p;
        let mut out = Vec::new();
        for coeffs in all_vectors(p, self.dim()) {
            let mut v = vec![0u64; self.k];
            for (c, r) in coeffs.iter().zip(&self.rows) {
                for j in 0..self.k {
                    v[j] = (v[j] + *c as u64 * r[j] as u64) % p as u64;
                }
            }
            out.push(v.into_iter().map(|x| x as u32).collect());
        }
        out.sort();
        out
    }

    /// Image under the coordinate projection onto `coords`.
    pub fn project(&self, coords: &[usize]) -> FpSubspace {
        let rows = self.rows.iter().map(|r| coords.iter().map(|&c| r[c]).collect()).collect();
        FpSubspace::from_rows_reduced(self.p, coords.len(), rows)
    }
}

/// Every subspace of `F_p^k`, enumerated by RREF shape.
pub fn all_subspaces(p: u32, k: usize) -> Vec<FpSubspace> {
    let mut out = Vec::new();
    for r in 0..=k {
        for pivots in combinations(k, r) {
            // free entries: row i, column c > pivot_i with c not a pivot
            let slots: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| {
                    let pv = pivots.clone();
                    (pv[i] + 1..k).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
                })
                .collect();
            for fill in all_vectors(p, slots.len()) {
                let mut rows = vec![vec![0u32; k]; r];
                for (i, &c) in pivots.iter().enumerate() {
                    rows[i][c] = 1;
                }
                for (&(i, c), &x) in slots.iter().zip(&fill) {
                    rows[i][c] = x;
                }
                out.push(FpSubspace { p, k, rows });
            }
        }
    }
    out
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Superspaces `W ⊃ V` with `dim W = dim V + 1`, deduplicated.
pub fn covers(v: &FpSubspace) -> Vec<FpSubspace> {
    let mut seen = BTreeSet::new();
    for w in all_vectors(v.p, v.k) {
        if !v.contains(&w) {
            seen.insert(v.with_vector(&w));
        }
    }
    seen.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gap {
    pub weight: usize,
    /// Lexicographically least vector of minimum weight in `V^⊥ ∖ W^⊥`.
    pub witness: FpVector,
}

fn check_cover(v: &FpSubspace, w: &FpSubspace) -> Result<()> {
    if v.p != w.p || v.k != w.k || !v.is_subspace_of(w) || w.dim() != v.dim() + 1 {
        return Err(Error::Precondition("need V < W with dim W = dim V + 1".into()));
    }
    Ok(())
}

pub fn min_weight_gap(v: &FpSubspace, w: &FpSubspace) -> Result<Gap> {
    check_cover(v, w)?;
    let wp = w.perp();
    v.perp()
        .elements()
        .into_iter()
        .filter(|x| !wp.contains(x))
        .map(|x| (weight(&x), x))
        .min()
        .map(|(weight, witness)| Gap { weight, witness })
        .ok_or_else(|| Error::Precondition("V^⊥ ∖ W^⊥ is empty".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct MuWitness {
    pub mu: usize,
    pub w: Option<FpSubspace>,
    pub witness: Option<FpVector>,
}

/// `max_W min_{v ∈ V^⊥ ∖ W^⊥} |v|`; `0` for the full space.
pub fn mu_p(v: &FpSubspace) -> MuWitness {
    let mut best = MuWitness {
        mu: 0,
        w: None,
        witness: None,
    };
    for w in covers(v) {
        let g = min_weight_gap(v, &w).expect("covers are codimension one");
        if best.w.is_none() || g.weight > best.mu {
            best = MuWitness {
                mu: g.weight,
                w: Some(w),
                witness: Some(g.witness),
            };
        }
    }
    best
}

#[derive(Clone, Debug, Serialize)]
pub struct TSearch {
    pub t: FpSubspace,
    pub gap: usize,
    pub target: usize,
    pub m: usize,
}

/// A `T > U` of dimension `dim U + 1` with `H + T = W` and
/// `gap(U, T)·m ≥ gap(H, W)`, `m = dim H − dim U + 1`. Candidates are
/// `U + ⟨t⟩` for `t ∈ W ∖ H`, first success in lexicographic order of `t`.
pub fn shrinkage_t_search(h: &FpSubspace, w: &FpSubspace, u: &FpSubspace) -> Result<Option<TSearch>> {
    check_cover(h, w)?;
    if !u.is_subspace_of(h) {
        return Err(Error::Precondition("need U ≤ H".into()));
    }
    let target = min_weight_gap(h, w)?.weight;
    let m = h.dim() - u.dim() + 1;
    let mut tried = BTreeSet::new();
    for t in w.elements() {
        if h.contains(&t) {
            continue;
        }
        let cand = u.with_vector(&t);
        if !tried.insert(cand.clone()) {
            continue;
        }
        debug_assert_eq!(h.sum(&cand), *w);
        let gap = min_weight_gap(u, &cand)?.weight;
        if gap * m >= target {
            return Ok(Some(TSearch { t: cand, gap, target, m }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perp_of_zero_sum() {
        let v = FpSubspace::zero_sum(2, 3);
        assert_eq!(v.perp(), FpSubspace::span(2, 3, [vec![1, 1, 1]]).unwrap());
        assert_eq!(FpSubspace::full(3, 4).perp(), FpSubspace::zero(3, 4));
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomial sums
        assert_eq!(all_subspaces(2, 3).len(), 16);
        assert_eq!(all_subspaces(2, 4).len(), 67);
        assert_eq!(all_subspaces(3, 3).len(), 28);
    }

    #[test]
    fn gaps() {
        let g = min_weight_gap(&FpSubspace::zero_sum(2, 3), &FpSubspace::full(2, 3)).unwrap();
        assert_eq!((g.weight, g.witness), (3, vec![1, 1, 1]));
        let v = FpSubspace::span(2, 2, [vec![0, 1]]).unwrap();
        let g = min_weight_gap(&v, &FpSubspace::full(2, 2)).unwrap();
        assert_eq!((g.weight, g.witness), (1, vec![1, 0]));
        let w = FpSubspace::span(2, 2, [vec![1, 1]]).unwrap();
        assert_eq!(min_weight_gap(&FpSubspace::zero(2, 2), &w).unwrap().weight, 1);
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu_p(&FpSubspace::full(3, 3)).mu, 0);
        for k in 2..=5 {
            assert_eq!(mu_p(&FpSubspace::zero_sum(3, k)).mu, k);
        }
        let v = FpSubspace::span(2, 3, [vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(mu_p(&v).mu, 1);
    }
}
