//! Permutations of `{1..n}`, stored zero-based.
//!
//! Composition follows `(p ∘ q)(x) = p(q(x))`. Cycle notation in and out is
//! one-based.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    /// Zero-based image list; must be a permutation of `0..n`.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Invalid(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// One-based image list, as in `[2, 3, 1]` for the 3-cycle `(1 2 3)`.
    pub fn from_one_based(images: &[u32]) -> Result<Perm> {
        if images.iter().any(|&x| x == 0) {
            return Err(Error::Invalid("one-based images must be >= 1".into()));
        }
        Perm::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Parse cycle notation such as `(1 2 3)(4 5)`. `()` is the identity.
    pub fn from_cycles(n: usize, text: &str) -> Result<Perm> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &body_start[..close];
            let points: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {s:?} in {text:?}")))
                })
                .collect::<Result<_>>()?;
            for &p in &points {
                if p == 0 || p > n {
                    return Err(Error::Parse(format!("point {p} outside 1..={n}")));
                }
                if touched[p - 1] {
                    return Err(Error::Parse(format!("point {p} repeated in {text:?}")));
                }
                touched[p - 1] = true;
            }
            for (j, &p) in points.iter().enumerate() {
                let next = points[(j + 1) % points.len()];
                images[p - 1] = (next - 1) as u32;
            }
            rest = body_start[close + 1..].trim_start();
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    pub fn pow(&self, e: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Disjoint cycles, one-based, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(" "))
            })
            .collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let p = Perm::from_cycles(5, "(1 2 3)(4 5)").unwrap();
        assert_eq!(p.to_cycle_string(), "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::from_cycles(3, "()").unwrap(), Perm::identity(3));
    }

    #[test]
    fn composition_applies_right_first() {
        let p = Perm::from_cycles(3, "(1 2)").unwrap();
        let q = Perm::from_cycles(3, "(2 3)").unwrap();
        // q sends 3 -> 2, then p sends 2 -> 1
        assert_eq!(p.compose(&q).apply(2), 0);
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(Perm::from_cycles(3, "(1 4)").is_err());
        assert!(Perm::from_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Perm::from_cycles(3, "(1 2").is_err());
        assert!(Perm::from_cycles(3, "1 2").is_err());
    }
}
