//! Unordered labeled formula trees over the AND/OR/MAJ bases.
//!
//! A [`Formula`] is an immutable, reference-counted node. Children are kept
//! sorted by canonical bytes, so two formulas are equal exactly when they are
//! isomorphic as labeled rooted trees. Identical subtrees may share storage.

pub mod action;
pub mod text;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Gate {
    And,
    Or,
    Maj,
}

impl Gate {
    fn tag(self) -> u8 {
        match self {
            Gate::And => 0x10,
            Gate::Or => 0x11,
            Gate::Maj => 0x12,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gate::And => "and",
            Gate::Or => "or",
            Gate::Maj => "maj",
        }
    }
}

#[derive(Debug)]
pub enum Node {
    Const(bool),
    /// Zero-based variable index; `neg` marks a negated literal.
    Lit { var: u32, neg: bool },
    Gate { op: Gate, children: Vec<Formula> },
}

#[derive(Debug)]
struct Inner {
    node: Node,
    bytes: Vec<u8>,
    size: u64,
    depth: u32,
}

#[derive(Clone)]
pub struct Formula(Arc<Inner>);

impl Formula {
    fn from_node(node: Node) -> Formula {
        let (bytes, size, depth) = match &node {
            Node::Const(b) => (vec![*b as u8], 0, 0),
            Node::Lit { var, neg } => {
                let mut v = Vec::with_capacity(6);
                v.push(0x02);
                v.extend_from_slice(&var.to_be_bytes());
                v.push(*neg as u8);
                (v, 1, 0)
            }
            Node::Gate { op, children } => {
                let len: usize = children.iter().map(|c| c.0.bytes.len()).sum();
                let mut v = Vec::with_capacity(5 + len);
                v.push(op.tag());
                v.extend_from_slice(&(children.len() as u32).to_be_bytes());
                for c in children {
                    v.extend_from_slice(&c.0.bytes);
                }
                let size = children.iter().map(|c| c.0.size).sum();
                let depth = 1 + children.iter().map(|c| c.0.depth).max().unwrap_or(0);
                (v, size, depth)
            }
        };
        Formula(Arc::new(Inner {
            node,
            bytes,
            size,
            depth,
        }))
    }

    pub fn constant(b: bool) -> Formula {
        Formula::from_node(Node::Const(b))
    }

    pub fn lit(var: u32, neg: bool) -> Formula {
        Formula::from_node(Node::Lit { var, neg })
    }

    pub fn pos(var: u32) -> Formula {
        Formula::lit(var, false)
    }

    pub fn neg(var: u32) -> Formula {
        Formula::lit(var, true)
    }

    pub fn gate(op: Gate, mut children: Vec<Formula>) -> Formula {
        children.sort_by(|a, b| a.0.bytes.cmp(&b.0.bytes));
        Formula::from_node(Node::Gate { op, children })
    }

    pub fn and(children: Vec<Formula>) -> Formula {
        Formula::gate(Gate::And, children)
    }

    pub fn or(children: Vec<Formula>) -> Formula {
        Formula::gate(Gate::Or, children)
    }

    pub fn maj(children: Vec<Formula>) -> Formula {
        Formula::gate(Gate::Maj, children)
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Canonical serialization; equal bytes iff isomorphic trees.
    pub fn canonical_bytes(&self) -> &[u8] {
        &self.0.bytes
    }

    /// Number of literal-labeled leaves. Constants count zero.
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Gates on the longest leaf-to-root path; a bare leaf has depth 0.
    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    pub fn gate_op(&self) -> Option<Gate> {
        match &self.0.node {
            Node::Gate { op, .. } => Some(*op),
            _ => None,
        }
    }

    pub fn children(&self) -> &[Formula] {
        match &self.0.node {
            Node::Gate { children, .. } => children,
            _ => &[],
        }
    }

    /// One past the largest variable index mentioned.
    pub fn var_count(&self) -> usize {
        let mut best = 0;
        self.visit_literals(&mut |v, _| best = best.max(v as usize + 1));
        best
    }

    /// Literal leaves in canonical depth-first order.
    pub fn visit_literals(&self, f: &mut impl FnMut(u32, bool)) {
        match &self.0.node {
            Node::Const(_) => {}
            Node::Lit { var, neg } => f(*var, *neg),
            Node::Gate { children, .. } => children.iter().for_each(|c| c.visit_literals(f)),
        }
    }

    /// Evaluate with `lit(v)` giving the value of variable `v`.
    pub fn eval_with(&self, lit: &impl Fn(u32) -> bool) -> bool {
        match &self.0.node {
            Node::Const(b) => *b,
            Node::Lit { var, neg } => lit(*var) != *neg,
            Node::Gate { op: Gate::And, children } => children.iter().all(|c| c.eval_with(lit)),
            Node::Gate { op: Gate::Or, children } => children.iter().any(|c| c.eval_with(lit)),
            Node::Gate { op: Gate::Maj, children } => {
                // strict majority; ties are 0
                let n = children.len();
                let mut ones = 0;
                for (i, c) in children.iter().enumerate() {
                    if c.eval_with(lit) {
                        ones += 1;
                    }
                    if 2 * ones > n || 2 * (ones + n - i - 1) <= n {
                        break;
                    }
                }
                2 * ones > n
            }
        }
    }

    pub fn evaluate(&self, assignment: &[bool]) -> Result<bool> {
        let need = self.var_count();
        if assignment.len() < need {
            return Err(Error::Invalid(format!(
                "assignment has {} bits, formula mentions variable {}",
                assignment.len(),
                need
            )));
        }
        Ok(self.eval_with(&|v| assignment[v as usize]))
    }

    /// Rebuild with every literal passed through `f`, sharing repeated subtrees.
    pub fn map_literals(&self, f: &impl Fn(u32, bool) -> (u32, bool)) -> Formula {
        let mut memo = HashMap::new();
        self.map_rec(f, &mut memo)
    }

    fn map_rec(
        &self,
        f: &impl Fn(u32, bool) -> (u32, bool),
        memo: &mut HashMap<*const Inner, Formula>,
    ) -> Formula {
        let key = Arc::as_ptr(&self.0);
        if let Some(done) = memo.get(&key) {
            return done.clone();
        }
        let out = match &self.0.node {
            Node::Const(_) => self.clone(),
            Node::Lit { var, neg } => {
                let (v, n) = f(*var, *neg);
                Formula::lit(v, n)
            }
            Node::Gate { op, children } => {
                Formula::gate(*op, children.iter().map(|c| c.map_rec(f, memo)).collect())
            }
        };
        memo.insert(key, out.clone());
        out
    }

    /// `x_i` relabeled to `x_{π(i)}`, polarity kept. Then
    /// `⟦act(π, f)⟧(x) = ⟦f⟧(x ∘ π)` and `act(π∘σ, f) = act(π, act(σ, f))`.
    pub fn act(&self, pi: &[u32]) -> Formula {
        self.map_literals(&|v, n| (pi[v as usize], n))
    }

    /// Formula for the negated function, with negations pushed to the leaves.
    /// MAJ of even fan-in gets a constant `1` child so strict ties still flip.
    pub fn dual(&self) -> Formula {
        let mut memo = HashMap::new();
        self.dual_rec(&mut memo)
    }

    fn dual_rec(&self, memo: &mut HashMap<*const Inner, Formula>) -> Formula {
        let key = Arc::as_ptr(&self.0);
        if let Some(done) = memo.get(&key) {
            return done.clone();
        }
        let out = match &self.0.node {
            Node::Const(b) => Formula::constant(!b),
            Node::Lit { var, neg } => Formula::lit(*var, !neg),
            Node::Gate { op, children } => {
                let mut kids: Vec<Formula> = children.iter().map(|c| c.dual_rec(memo)).collect();
                let op = match op {
                    Gate::And => Gate::Or,
                    Gate::Or => Gate::And,
                    Gate::Maj => {
                        if kids.len() % 2 == 0 {
                            kids.push(Formula::constant(true));
                        }
                        Gate::Maj
                    }
                };
                Formula::gate(op, kids)
            }
        };
        memo.insert(key, out.clone());
        out
    }

    /// Flip the polarity of the `index`-th literal leaf (canonical order).
    pub fn flip_literal_at(&self, index: u64) -> Result<Formula> {
        if index >= self.size() {
            return Err(Error::Invalid(format!("literal {index} out of range {}", self.size())));
        }
        Ok(self.flip_rec(index))
    }

    fn flip_rec(&self, index: u64) -> Formula {
        match &self.0.node {
            Node::Lit { var, neg } => Formula::lit(*var, !neg),
            Node::Gate { op, children } => {
                let mut rest = index;
                let mut kids = children.clone();
                for c in kids.iter_mut() {
                    if rest < c.size() {
                        *c = c.flip_rec(rest);
                        break;
                    }
                    rest -= c.size();
                }
                Formula::gate(*op, kids)
            }
            Node::Const(_) => unreachable!("constants hold no literals"),
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.bytes == other.0.bytes
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.bytes.hash(state);
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.bytes.cmp(&other.0.bytes)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::to_text(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::to_text(self))
    }
}
