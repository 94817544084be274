//! Subgroups of `(Z/qZ)^k` with `q = p^t`, the subspace `V_H`, and the
//! prime-power size bound.

use serde::Serialize;

use super::{min_weight_gap, FpSubspace};
use crate::error::{Error, Result};
use crate::group::{Ceilings, FiniteGroup};
use crate::params::prime_power_base;
use crate::subgroup::{self, SubgroupHandle};

/// `(Z/qZ)^k`; element `i` is the base-`q` digit vector of `i`, first
/// coordinate most significant.
#[derive(Clone, Debug)]
pub struct ZqPower {
    pub q: u32,
    pub p: u32,
    pub t: u32,
    pub k: usize,
    order: usize,
}

impl ZqPower {
    pub fn new(q: u32, k: usize, ceilings: &Ceilings) -> Result<ZqPower> {
        let p = prime_power_base(q as usize).ok_or_else(|| Error::Invalid(format!("{q} is not a prime power")))? as u32;
        let t = (q as f64).log(p as f64).round() as u32;
        let order = (q as u128).saturating_pow(k as u32);
        if order > ceilings.elements as u128 {
            return Err(Error::Ceiling {
                what: "(Z/q)^k order",
                ceiling: ceilings.elements,
            });
        }
        Ok(ZqPower {
            q,
            p,
            t,
            k,
            order: order as usize,
        })
    }

    pub fn vector(&self, mut i: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.k];
        for j in (0..self.k).rev() {
            v[j] = (i % self.q as usize) as u32;
            i /= self.q as usize;
        }
        v
    }

    pub fn index(&self, v: &[u32]) -> usize {
        v.iter().fold(0, |acc, &x| acc * self.q as usize + (x % self.q) as usize)
    }

    /// Subgroup of all vectors with every entry in `p^{t-1}·Z/qZ`, i.e. `C_p^k`.
    pub fn socle(&self) -> SubgroupHandle {
        let s = self.q / self.p;
        SubgroupHandle::from_elements(
            self.order,
            (0..self.order).filter(|&i| self.vector(i).iter().all(|&x| x % s == 0)),
        )
    }

    /// The image of `(x_1..x_{k-1}) ↦ (x_1..x_{k-1}, −Σx_i)`.
    pub fn zero_sum(&self) -> SubgroupHandle {
        SubgroupHandle::from_elements(
            self.order,
            (0..self.order).filter(|&i| self.vector(i).iter().sum::<u32>() % self.q == 0),
        )
    }

    pub fn all_subgroups(&self, ceilings: &Ceilings) -> Result<Vec<SubgroupHandle>> {
        subgroup::enumerate_subgroups(self, ceilings)
    }
}

impl FiniteGroup for ZqPower {
    fn order(&self) -> usize {
        self.order
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.vector(a), self.vector(b));
        self.index(&x.iter().zip(&y).map(|(u, v)| (u + v) % self.q).collect::<Vec<_>>())
    }

    fn inv(&self, a: usize) -> usize {
        self.index(&self.vector(a).iter().map(|u| (self.q - u) % self.q).collect::<Vec<_>>())
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.k)
            .map(|j| {
                let mut v = vec![0u32; self.k];
                v[j] = 1;
                self.index(&v)
            })
            .collect()
    }
}

/// `H ∩ C_p^k` rescaled to `F_p^k`.
pub fn vh_extract(g: &ZqPower, h: &SubgroupHandle) -> FpSubspace {
    let s = g.q / g.p;
    let vecs = h
        .elements()
        .map(|i| g.vector(i))
        .filter(|v| v.iter().all(|&x| x % s == 0))
        .map(|v| v.into_iter().map(|x| x / s).collect::<Vec<_>>());
    FpSubspace::span(g.p, g.k, vecs).expect("p is prime")
}

/// Largest `m` with `q^m ≤ |H|`.
pub fn log_q_floor(q: u32, order: usize) -> u32 {
    let mut m = 0;
    let mut acc = q as u128;
    while acc <= order as u128 {
        m += 1;
        acc *= q as u128;
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimePowerBound {
    pub h_order: usize,
    pub dim_vh: usize,
    pub mu: usize,
    pub d: usize,
    pub value: f64,
}

/// `|H|·q^{d(μ^{1/d}−1)} / q^{dim V_H}` with `μ = μ(V_H, W)`; `d ≥ 1`.
pub fn prime_power_bound(g: &ZqPower, h: &SubgroupHandle, w: &FpSubspace, d: usize) -> Result<PrimePowerBound> {
    if d == 0 {
        return Err(Error::Precondition("the bound is stated for d ≥ 1".into()));
    }
    let vh = vh_extract(g, h);
    let mu = min_weight_gap(&vh, w)?.weight;
    let q = g.q as f64;
    let exp = d as f64 * ((mu as f64).powf(1.0 / d as f64) - 1.0) - vh.dim() as f64;
    Ok(PrimePowerBound {
        h_order: h.order(),
        dim_vh: vh.dim(),
        mu,
        d,
        value: h.order() as f64 * q.powf(exp),
    })
}

/// The `d → ∞` form `|H|·q^{log₂ μ} / q^{dim V_H}`.
pub fn prime_power_bound_limit(h_order: usize, q: u32, mu: usize, dim_vh: usize) -> f64 {
    h_order as f64 * (q as f64).powf((mu as f64).log2() - dim_vh as f64)
}

/// Every `W` of dimension `dim V + 1` over `V` on which the 0/1 table
/// `values` (indexed like `g`) is nonconstant, read through `w ↦ p^{t-1}·w`.
pub fn nonconstant_covers(g: &ZqPower, v: &FpSubspace, values: &[bool]) -> Vec<FpSubspace> {
    let s = g.q / g.p;
    super::covers(v)
        .into_iter()
        .filter(|w| {
            let mut seen = [false; 2];
            for x in w.elements() {
                let scaled: Vec<u32> = x.iter().map(|&c| c * s).collect();
                seen[values[g.index(&scaled)] as usize] = true;
            }
            seen[0] && seen[1]
        })
        .collect()
}

/// Stabilizer in `(Z/q)^k` of a table under `x ↦ x − y`.
pub fn shift_stabilizer(g: &ZqPower, values: &[bool]) -> SubgroupHandle {
    SubgroupHandle::from_elements(
        g.order(),
        (0..g.order()).filter(|&y| {
            let yi = g.inv(y);
            (0..g.order()).all(|x| values[g.mul(x, yi)] == values[x])
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vh_examples() {
        let c = Ceilings::default();
        let g = ZqPower::new(4, 2, &c).unwrap();
        let full = SubgroupHandle::full(g.order());
        assert!(vh_extract(&g, &full).is_full());
        assert_eq!(vh_extract(&g, &SubgroupHandle::trivial(g.order())).dim(), 0);
        let h = subgroup::closure(&g, &[g.index(&[1, 1])]);
        assert_eq!(h.order(), 4);
        assert_eq!(vh_extract(&g, &h), FpSubspace::span(2, 2, [vec![1, 1]]).unwrap());
    }

    #[test]
    fn zero_sum_bound() {
        let c = Ceilings::default();
        let g = ZqPower::new(4, 4, &c).unwrap();
        let h = g.zero_sum();
        let b = prime_power_bound(&g, &h, &FpSubspace::full(2, 4), 2).unwrap();
        assert_eq!((b.h_order, b.dim_vh, b.mu), (64, 3, 4));
        assert!((b.value - 16.0).abs() < 1e-9);
    }
}
