//! Divide-and-conquer Σ/Π formulas for entries of the iterated product.
//!
//! `build_exact` needs `k = b^d` and produces depth `d + 1` with size
//! `k·n^{d(b-1)}`. `build_general` splits into `⌈k^{1/d}⌉` nearly equal
//! contiguous blocks and works for any `k`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Formula, Gate};
use crate::word::var_index;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// Top gate OR.
    Sigma,
    /// Top gate AND.
    Pi,
}

impl std::str::FromStr for Polarity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sigma" | "s" => Ok(Polarity::Sigma),
            "pi" | "p" => Ok(Polarity::Pi),
            other => Err(Error::Parse(format!("unknown polarity {other:?}"))),
        }
    }
}

impl std::fmt::Display for Polarity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Polarity::Sigma => "sigma",
            Polarity::Pi => "pi",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub polarity: Polarity,
    /// Zero-based boundary pair `(u_0, u_k)`.
    pub u0: usize,
    pub uk: usize,
}

impl ConstructionParams {
    pub fn new(n: usize, k: usize, d: usize, polarity: Polarity) -> ConstructionParams {
        ConstructionParams {
            n,
            k,
            d,
            polarity,
            u0: 0,
            uk: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 || self.d == 0 {
            return Err(Error::Invalid("n, k and d must be positive".into()));
        }
        if self.u0 >= self.n || self.uk >= self.n {
            return Err(Error::Invalid("boundary points must lie in [n]".into()));
        }
        Ok(())
    }
}

/// `Some(b)` with `b^d = k`.
pub fn exact_root(k: usize, d: usize) -> Option<usize> {
    let b = ceil_root(k, d);
    (pow_u128(b, d) == k as u128).then_some(b)
}

/// Least `b ≥ 1` with `b^d ≥ k`.
pub fn ceil_root(k: usize, d: usize) -> usize {
    let mut b = (k as f64).powf(1.0 / d as f64).floor().max(1.0) as usize;
    while b > 1 && pow_u128(b - 1, d) >= k as u128 {
        b -= 1;
    }
    while pow_u128(b, d) < k as u128 {
        b += 1;
    }
    b
}

fn pow_u128(b: usize, e: usize) -> u128 {
    (b as u128).saturating_pow(e as u32)
}

/// `k·n^{d(k^{1/d}-1)}` for integral roots.
pub fn predicted_size(n: usize, k: usize, d: usize) -> Option<u128> {
    let b = exact_root(k, d)?;
    Some((k as u128).saturating_mul(pow_u128(n, d * (b - 1))))
}

/// `k·n^{d(⌈k^{1/d}⌉-1)+d}`.
pub fn general_envelope(n: usize, k: usize, d: usize) -> u128 {
    let b = ceil_root(k, d);
    (k as u128).saturating_mul(pow_u128(n, d * (b - 1) + d))
}

fn splice(op: Gate, f: Formula, out: &mut Vec<Formula>) {
    if f.gate_op() == Some(op) {
        out.extend(f.children().iter().cloned());
    } else {
        out.push(f);
    }
}

type Key = (usize, usize, usize, usize, usize, Polarity);

struct Builder {
    n: usize,
    general: bool,
    memo: HashMap<Key, Formula>,
    duals: HashMap<Key, Formula>,
}

impl Builder {
    fn lit(&self, i: usize, a: usize, b: usize, neg: bool) -> Formula {
        Formula::lit(var_index(self.n, i, a, b), neg)
    }

    /// All intermediate point sequences of length `m`.
    fn sequences(&self, m: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|s| {
                    (0..self.n).map(move |x| {
                        let mut t = s.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        out
    }

    fn base(&self, lo: usize, len: usize, u: usize, v: usize, pol: Polarity) -> Formula {
        let mut terms = Vec::new();
        for mid in self.sequences(len - 1) {
            let mut pts = Vec::with_capacity(len + 1);
            pts.push(u);
            pts.extend(mid);
            pts.push(v);
            let lits = (0..len).map(|j| {
                let last = j + 1 == len;
                let neg = pol == Polarity::Pi && !last;
                self.lit(lo + j, pts[j], pts[j + 1], neg)
            });
            terms.push(match pol {
                Polarity::Sigma => Formula::and(lits.collect()),
                Polarity::Pi => Formula::or(lits.collect()),
            });
        }
        match pol {
            Polarity::Sigma => Formula::or(terms),
            Polarity::Pi => Formula::and(terms),
        }
    }

    fn dual_of(&mut self, key: Key) -> Formula {
        if let Some(f) = self.duals.get(&key) {
            return f.clone();
        }
        let (lo, len, u, v, dd, pol) = key;
        let f = self.build(lo, len, u, v, dd, pol).dual();
        self.duals.insert(key, f.clone());
        f
    }

    fn build(&mut self, lo: usize, len: usize, u: usize, v: usize, dd: usize, pol: Polarity) -> Formula {
        let key = (lo, len, u, v, dd, pol);
        if let Some(f) = self.memo.get(&key) {
            return f.clone();
        }
        let f = if self.general && len == 1 {
            self.lit(lo, u, v, false)
        } else if dd == 1 {
            self.base(lo, len, u, v, pol)
        } else {
            self.induct(lo, len, u, v, dd, pol)
        };
        self.memo.insert(key, f.clone());
        f
    }

    fn blocks(&self, len: usize, dd: usize) -> Vec<usize> {
        let b = if self.general {
            ceil_root(len, dd).min(len)
        } else {
            exact_root(len, dd).expect("integral root checked by caller")
        };
        let (q, r) = (len / b, len % b);
        (0..b).map(|j| q + usize::from(j < r)).collect()
    }

    fn induct(&mut self, lo: usize, len: usize, u: usize, v: usize, dd: usize, pol: Polarity) -> Formula {
        let sizes = self.blocks(len, dd);
        let b = sizes.len();
        let starts: Vec<usize> = sizes
            .iter()
            .scan(lo, |s, &l| {
                let st = *s;
                *s += l;
                Some(st)
            })
            .collect();
        let mut terms = Vec::new();
        for mid in self.sequences(b - 1) {
            let mut pts = Vec::with_capacity(b + 1);
            pts.push(u);
            pts.extend(mid);
            pts.push(v);
            let mut kids = Vec::new();
            match pol {
                Polarity::Sigma => {
                    for j in 0..b {
                        let f = self.build(starts[j], sizes[j], pts[j], pts[j + 1], dd - 1, Polarity::Pi);
                        splice(Gate::And, f, &mut kids);
                    }
                    terms.push(Formula::and(kids));
                }
                Polarity::Pi => {
                    for j in 0..b - 1 {
                        let f = self.dual_of((starts[j], sizes[j], pts[j], pts[j + 1], dd - 1, Polarity::Pi));
                        splice(Gate::Or, f, &mut kids);
                    }
                    let f = self.build(starts[b - 1], sizes[b - 1], pts[b - 1], pts[b], dd - 1, Polarity::Sigma);
                    splice(Gate::Or, f, &mut kids);
                    terms.push(Formula::or(kids));
                }
            }
        }
        match pol {
            Polarity::Sigma => Formula::or(terms),
            Polarity::Pi => Formula::and(terms),
        }
    }
}

/// The exact recursion; refuses `k` that is not a perfect `d`-th power.
pub fn build_exact(p: &ConstructionParams) -> Result<Formula> {
    p.validate()?;
    if exact_root(p.k, p.d).is_none() {
        return Err(Error::Precondition(format!(
            "k = {} is not a perfect {}-th power; use the general construction",
            p.k, p.d
        )));
    }
    let mut b = Builder {
        n: p.n,
        general: false,
        memo: HashMap::new(),
        duals: HashMap::new(),
    };
    Ok(b.build(0, p.k, p.u0, p.uk, p.d, p.polarity))
}

/// Any `k`: nearly equal contiguous blocks, depth at most `d + 1`.
pub fn build_general(p: &ConstructionParams) -> Result<Formula> {
    p.validate()?;
    let mut b = Builder {
        n: p.n,
        general: true,
        memo: HashMap::new(),
        duals: HashMap::new(),
    };
    Ok(b.build(0, p.k, p.u0, p.uk, p.d, p.polarity))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        assert_eq!(exact_root(9, 2), Some(3));
        assert_eq!(exact_root(8, 3), Some(2));
        assert_eq!(exact_root(3, 2), None);
        assert_eq!(ceil_root(3, 2), 2);
        assert_eq!(ceil_root(1, 4), 1);
    }

    #[test]
    fn exact_sizes() {
        for &(n, k, d) in &[(2, 2, 1), (2, 4, 2), (3, 9, 2), (2, 8, 3)] {
            for pol in [Polarity::Sigma, Polarity::Pi] {
                let f = build_exact(&ConstructionParams::new(n, k, d, pol)).unwrap();
                assert_eq!(f.size() as u128, predicted_size(n, k, d).unwrap());
                assert_eq!(f.depth() as usize, d + 1);
            }
        }
    }

    #[test]
    fn general_agrees_with_exact_on_integral_roots() {
        for &(n, k, d) in &[(2, 4, 2), (2, 8, 3), (3, 3, 1)] {
            let p = ConstructionParams::new(n, k, d, Polarity::Pi);
            assert_eq!(build_general(&p).unwrap(), build_exact(&p).unwrap());
        }
    }

    #[test]
    fn general_small_cases() {
        let one = build_general(&ConstructionParams::new(3, 1, 2, Polarity::Sigma)).unwrap();
        assert_eq!(one.size(), 1);
        let f = build_general(&ConstructionParams::new(2, 3, 1, Polarity::Sigma)).unwrap();
        assert_eq!(f.size(), 12);
        let g = build_general(&ConstructionParams::new(2, 3, 2, Polarity::Sigma)).unwrap();
        assert!(g.size() as u128 <= general_envelope(2, 3, 2));
        assert!(g.depth() <= 3);
    }
}
