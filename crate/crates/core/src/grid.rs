//! Grid runs: build, verify and bound a set of `(n, k, d)` cells over `C_n`.

use std::sync::Arc;

use crate::build::{build_exact, build_general, exact_root, general_envelope, predicted_size, ConstructionParams, Polarity};
use crate::error::Result;
use crate::group::{named, Ceilings, FiniteGroup};
use crate::params::is_prime;
use crate::report::{GridRow, Provenance};
use crate::verify::{verify_construction, CheckMode};
use crate::witness::{framework_check, BOUND_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridCell {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

/// Cartesian product in the given order.
pub fn product(ns: &[usize], ks: &[usize], ds: &[usize]) -> Vec<GridCell> {
    let mut out = Vec::new();
    for &n in ns {
        for &k in ks {
            for &d in ds {
                out.push(GridCell { n, k, d });
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct GridOptions {
    pub polarity: Polarity,
    pub mode: CheckMode,
    /// Run the stabilizer computation only when `|Q|·max(size, |Ω|)` is at
    /// most this; otherwise the closed form is reported.
    pub framework_budget: u128,
    /// Flip the first literal of this cell's formula before checking.
    pub mutate: Option<usize>,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            polarity: Polarity::Sigma,
            mode: CheckMode::Auto,
            framework_budget: 20_000_000,
            mutate: None,
        }
    }
}

/// `p^{d(k^{1/d}−1)}`.
pub fn closed_form_lower(p: usize, k: usize, d: usize) -> f64 {
    (p as f64).powf(d as f64 * ((k as f64).powf(1.0 / d as f64) - 1.0))
}

pub fn run_cell(index: usize, cell: GridCell, opts: &GridOptions, ceilings: &Ceilings) -> Result<GridRow> {
    let GridCell { n, k, d } = cell;
    let g = Arc::new(named::cyclic(n));
    let params = ConstructionParams::new(n, k, d, opts.polarity);
    let mut f = if exact_root(k, d).is_some() {
        build_exact(&params)?
    } else {
        build_general(&params)?
    };
    if opts.mutate == Some(index) {
        f = f.flip_literal_at(0)?;
    }
    let predicted = predicted_size(n, k, d);
    let rep = verify_construction(&f, &g, k, (0, 0), predicted, opts.mode)?;
    let q_order = (g.order() as u128).saturating_pow(k as u32);
    let work = q_order.saturating_mul((f.size() as u128).max(q_order));
    let (lower, provenance) = if !is_prime(n) {
        (None, Provenance::PaperFormula)
    } else if work <= opts.framework_budget {
        let fr = framework_check(&f, &g, k, Some(d), ceilings)?;
        (fr.param_bound, Provenance::Measured)
    } else {
        (Some(closed_form_lower(n, k, d)), Provenance::PaperFormula)
    };
    let lower_ok = lower.map_or(true, |l| f.size() as f64 >= l * (1.0 - BOUND_TOLERANCE));
    Ok(GridRow {
        group: format!("C{n}"),
        n,
        k,
        d,
        polarity: opts.polarity.to_string(),
        lower,
        lower_provenance: provenance,
        measured: f.size(),
        depth: f.depth(),
        predicted,
        envelope: general_envelope(n, k, d),
        semantic_mode: rep.semantic_mode.to_string(),
        semantic_match: rep.semantic_match,
        invariance: rep.invariance,
        pass: rep.all_pass() && lower_ok,
    })
}

pub fn run_grid(cells: &[GridCell], opts: &GridOptions, ceilings: &Ceilings) -> Result<Vec<GridRow>> {
    cells
        .iter()
        .enumerate()
        .map(|(i, &c)| run_cell(i, c, opts, ceilings))
        .collect()
}
