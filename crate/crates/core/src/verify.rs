//! Checks a constructed formula against the word oracle and the
//! shifted-diagonal action.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::formula::action::is_invariant;
use crate::formula::Formula;
use crate::group::{FiniteGroup, GroupTable};
use crate::tuple::{Constraint, TupleSpec};
use crate::word::{eval_on_tuple, omega_size, omega_tuple, variable_action, word_entry};

pub const EXHAUSTIVE_LIMIT: u128 = 100_000;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum CheckMode {
    /// Exhaustive when `|G|^k ≤ 10^5`, otherwise sampled with the defaults.
    Auto,
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub k: usize,
    pub u0: usize,
    pub uk: usize,
    /// `exhaustive` or `sampled`.
    pub semantic_mode: &'static str,
    pub inputs_checked: u64,
    pub mismatches: u64,
    /// One-based tuple of element indices for the first mismatch.
    pub first_mismatch: Option<Vec<usize>>,
    pub semantic_match: bool,
    pub invariance: bool,
    pub size: u64,
    pub depth: u32,
    pub predicted_size: Option<u128>,
    pub size_match: Option<bool>,
}

impl ConstructionReport {
    pub fn all_pass(&self) -> bool {
        self.semantic_match && self.invariance && self.size_match.unwrap_or(true)
    }
}

fn check_input(f: &Formula, g: &GroupTable, t: &[usize], u0: usize, uk: usize) -> bool {
    eval_on_tuple(f, g, t) == word_entry(g, t, u0, uk)
}

/// The inputs a semantic check visits, in order, and the mode's name.
pub fn input_stream(order: usize, k: usize, mode: CheckMode) -> Result<(&'static str, Box<dyn Iterator<Item = Vec<usize>>>)> {
    let total = omega_size(order, k);
    let mode = match mode {
        CheckMode::Auto if total <= EXHAUSTIVE_LIMIT => CheckMode::Exhaustive,
        CheckMode::Auto => CheckMode::Sampled {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        },
        m => m,
    };
    Ok(match mode {
        CheckMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let it = (0..samples).map(move |_| (0..k).map(|_| rng.gen_range(0..order)).collect());
            ("sampled", Box::new(it))
        }
        _ => {
            if total > usize::MAX as u128 {
                return Err(crate::Error::Ceiling {
                    what: "input domain size",
                    ceiling: usize::MAX,
                });
            }
            ("exhaustive", Box::new((0..total as usize).map(move |w| omega_tuple(order, k, w))))
        }
    })
}

/// First input (zero-based) on which `f` disagrees with the word oracle,
/// visiting the same inputs as [`verify_construction`].
pub fn first_mismatch(f: &Formula, g: &GroupTable, k: usize, (u0, uk): (usize, usize), mode: CheckMode) -> Result<Option<Vec<usize>>> {
    let (_, mut inputs) = input_stream(g.order(), k, mode)?;
    Ok(inputs.find(|t| !check_input(f, g, t, u0, uk)))
}

/// Semantic match on `G^k`, invariance under the shifted-diagonal generators
/// of `G^{k-1}`, and the size/depth figures.
pub fn verify_construction(
    f: &Formula,
    g: &Arc<GroupTable>,
    k: usize,
    (u0, uk): (usize, usize),
    predicted_size: Option<u128>,
    mode: CheckMode,
) -> Result<ConstructionReport> {
    let (semantic_mode, inputs) = input_stream(g.order(), k, mode)?;
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    let mut first = None;
    for t in inputs {
        checked += 1;
        if !check_input(f, g, &t, u0, uk) {
            mismatches += 1;
            if first.is_none() {
                first = Some(t.iter().map(|x| x + 1).collect());
            }
        }
    }
    let spec = TupleSpec::new(g.clone(), k, Constraint::ShiftedDiagonal)?;
    let invariance = is_invariant(f, &variable_action(&spec));
    Ok(ConstructionReport {
        k,
        u0,
        uk,
        semantic_mode,
        inputs_checked: checked,
        mismatches,
        first_mismatch: first,
        semantic_match: mismatches == 0,
        invariance,
        size: f.size(),
        depth: f.depth(),
        predicted_size,
        size_match: predicted_size.map(|p| p == f.size() as u128),
    })
}
