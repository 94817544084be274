//! The word problem over `G ≤ S_n`: instances, the oracle, and the variable
//! actions of constrained powers on `[k n²]`.
//!
//! Variable `idx(i, a, b) = i·n² + a·n + b` (zero-based) is entry `(a, b)` of
//! matrix `i`, and `matrix(g)_{a,b} = 1` iff `g(b) = a`.

use crate::error::{Error, Result};
use crate::formula::action::VarAction;
use crate::formula::Formula;
use crate::group::{FiniteGroup, GroupTable};
use crate::perm::Perm;
use crate::subgroup::SubgroupHandle;
use crate::tuple::{TupleGroup, TupleSpec};

#[inline]
pub fn var_index(n: usize, i: usize, a: usize, b: usize) -> u32 {
    (i * n * n + a * n + b) as u32
}

/// `(i, a, b)` of a zero-based variable.
#[inline]
pub fn var_coords(n: usize, v: u32) -> (usize, usize, usize) {
    let v = v as usize;
    (v / (n * n), (v / n) % n, v % n)
}

pub fn matrix(g: &Perm) -> Vec<Vec<bool>> {
    let n = g.degree();
    (0..n).map(|a| (0..n).map(|b| g.apply(b) == a).collect()).collect()
}

pub fn bool_matmul(x: &[Vec<bool>], y: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = x.len();
    (0..n)
        .map(|a| (0..n).map(|b| (0..n).any(|c| x[a][c] && y[c][b])).collect())
        .collect()
}

/// A tuple of group elements, by index into `group`.
#[derive(Clone, Debug)]
pub struct WordInstance<'a> {
    pub group: &'a GroupTable,
    pub tuple: Vec<usize>,
}

impl<'a> WordInstance<'a> {
    pub fn new(group: &'a GroupTable, tuple: Vec<usize>) -> Result<WordInstance<'a>> {
        if tuple.iter().any(|&x| x >= group.order()) {
            return Err(Error::Invalid("tuple element outside the group".into()));
        }
        Ok(WordInstance { group, tuple })
    }

    pub fn k(&self) -> usize {
        self.tuple.len()
    }

    /// Entry `(u0, uk)` of `M_1 ⋯ M_k`: `(g_1 ∘ ⋯ ∘ g_k)(uk) = u0`.
    pub fn entry(&self, u0: usize, uk: usize) -> bool {
        word_entry(self.group, &self.tuple, u0, uk)
    }

    /// The `(1,1)` entry.
    pub fn oracle(&self) -> bool {
        self.entry(0, 0)
    }

    pub fn bits(&self) -> Vec<bool> {
        let n = self.group.degree();
        let mut out = Vec::with_capacity(self.k() * n * n);
        for &h in &self.tuple {
            for a in 0..n {
                for b in 0..n {
                    out.push(self.group.act(h, b) == a);
                }
            }
        }
        out
    }

    pub fn eval(&self, f: &Formula) -> bool {
        eval_on_tuple(f, self.group, &self.tuple)
    }
}

pub fn word_entry(g: &GroupTable, tuple: &[usize], u0: usize, uk: usize) -> bool {
    let mut x = uk;
    for &h in tuple.iter().rev() {
        x = g.act(h, x);
    }
    x == u0
}

/// Evaluate a formula on the bit encoding of `tuple` without materializing it.
pub fn eval_on_tuple(f: &Formula, g: &GroupTable, tuple: &[usize]) -> bool {
    let n = g.degree();
    f.eval_with(&|v| {
        let (i, a, b) = var_coords(n, v);
        g.act(tuple[i], b) == a
    })
}

/// `Ω = G^k` in mixed radix, most significant coordinate first.
pub fn omega_tuple(order: usize, k: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0usize; k];
    for j in (0..k).rev() {
        t[j] = index % order;
        index /= order;
    }
    t
}

pub fn omega_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * order + x)
}

pub fn omega_size(order: usize, k: usize) -> u128 {
    (order as u128).saturating_pow(k as u32)
}

/// `⟦f⟧` on every point of `Ω = G^k`.
pub fn truth_table(f: &Formula, g: &GroupTable, k: usize, ceiling: usize) -> Result<Vec<bool>> {
    let size = omega_size(g.order(), k);
    if size > ceiling as u128 {
        return Err(Error::Ceiling {
            what: "input domain size",
            ceiling,
        });
    }
    Ok((0..size as usize)
        .map(|w| eval_on_tuple(f, g, &omega_tuple(g.order(), k, w)))
        .collect())
}

/// Per-block `(α_i, β_i)` of a tuple in a constrained power: variable
/// `(i, a, b)` moves to `(i, α_i(a), β_i(b))`. Arity `2k` tuples act on both
/// sides; arity `k` tuples act on the left only.
pub fn block_maps(spec: &TupleSpec, tuple: &[u32]) -> Vec<(usize, usize)> {
    let k = spec.k();
    if spec.arity() == 2 * k {
        (0..k).map(|i| (tuple[2 * i] as usize, tuple[2 * i + 1] as usize)).collect()
    } else {
        (0..k).map(|i| (tuple[i] as usize, 0)).collect()
    }
}

pub fn var_perm(spec: &TupleSpec, tuple: &[u32]) -> Vec<u32> {
    let g = spec.base();
    let n = g.degree();
    let mut out = Vec::with_capacity(spec.k() * n * n);
    for (i, (al, be)) in block_maps(spec, tuple).into_iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                out.push(var_index(n, i, g.act(al, a), g.act(be, b)));
            }
        }
    }
    out
}

/// Tuple-level effect of a variable permutation: `x ∘ π` encodes
/// `h_i ↦ α_i⁻¹ h_i β_i`.
pub fn act_on_tuple(spec: &TupleSpec, tuple: &[u32], h: &[usize]) -> Vec<usize> {
    let g = spec.base();
    block_maps(spec, tuple)
        .into_iter()
        .zip(h)
        .map(|((al, be), &hi)| g.mul(g.inv(al), g.mul(hi, be)))
        .collect()
}

/// Generator permutations of a constrained power, without enumerating it.
pub fn variable_action(spec: &TupleSpec) -> VarAction {
    let g = spec.base();
    let n = g.degree();
    let p = spec.params();
    let mut gens = Vec::new();
    for j in 0..p {
        for &s in &g.generators() {
            let mut params = vec![0usize; p];
            params[j] = s;
            gens.push(var_perm(spec, &spec.tuple_from_params(&params)));
        }
    }
    VarAction {
        m: spec.k() * n * n,
        generators: gens,
    }
}

/// Syntactic stabilizer of `f` in an enumerated constrained power.
pub fn syntactic_stabilizer(f: &Formula, q: &TupleGroup) -> SubgroupHandle {
    let spec = q.spec();
    SubgroupHandle::from_elements(
        q.order(),
        (0..q.order()).filter(|&x| f.act(&var_perm(spec, &q.tuple(x))) == *f),
    )
}

/// Stabilizer in `q` of an integer-valued function given as a table over `G^k`.
pub fn table_stabilizer<T: PartialEq>(values: &[T], q: &TupleGroup) -> SubgroupHandle {
    let spec = q.spec();
    let g = spec.base();
    let (order, k) = (g.order(), spec.k());
    let fixes = |x: usize| {
        let t = q.tuple(x);
        (0..values.len()).all(|w| {
            let h = omega_tuple(order, k, w);
            values[omega_index(order, &act_on_tuple(spec, &t, &h))] == values[w]
        })
    };
    SubgroupHandle::from_elements(q.order(), (0..q.order()).filter(|&x| fixes(x)))
}

/// Semantic stabilizer of `f` over `Ω = G^k`.
pub fn semantic_stabilizer(f: &Formula, q: &TupleGroup, ceiling: usize) -> Result<SubgroupHandle> {
    let values = truth_table(f, q.base(), q.spec().k(), ceiling)?;
    Ok(table_stabilizer(&values, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn orientation_matches_composition() {
        let g = named::symmetric(3);
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = bool_matmul(&matrix(g.element(a)), &matrix(g.element(b)));
                assert_eq!(lhs, matrix(&g.element(a).compose(g.element(b))));
            }
        }
    }

    #[test]
    fn oracle_basics() {
        let g = named::symmetric(3);
        let x = 3;
        assert!(WordInstance::new(&g, vec![x, g.inv(x)]).unwrap().oracle());
        assert!(WordInstance::new(&g, vec![0, 0, 0]).unwrap().oracle());
        let s2 = named::symmetric(2);
        assert!(!WordInstance::new(&s2, vec![1]).unwrap().oracle());
    }
}
