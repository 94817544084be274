//! The `invword` command line. Every subcommand prints one JSON report
//! (or a TSV table for `grid --format tsv`); the exit status is 0 when all
//! checks pass, 1 when a check fails and 2 on invalid input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::build::{build_exact, build_general, exact_root, general_envelope, predicted_size, ConstructionParams, Polarity};
use crate::error::{Error, Result};
use crate::formula::text::to_text;
use crate::fp::{self, sweeps as fp_sweeps, FpSubspace};
use crate::grid::{self, GridOptions};
use crate::group::{Ceilings, FiniteGroup, GroupTable};
use crate::io;
use crate::params::{is_prime, is_simple, min_faithful_degree, n_param, q_param};
use crate::report::{grid_tsv, Provenance, Report};
use crate::structure::{self, Square};
use crate::subgroup::SubgroupHandle;
use crate::sweep::SweepMode;
use crate::tuple::{Constraint, TupleGroup, TupleSpec};
use crate::verify::{verify_construction, CheckMode};
use crate::witness::beta::{check_good_tuple, BetaEngine, BetaInterval, DEFAULT_MAX_SUBGROUPS};
use crate::witness::sweeps::{self as na_sweeps, PairSetting};
use crate::witness::{cyclic_subspace, edge_set, mu_nonabelian};
use crate::word;

#[derive(Parser, Debug)]
#[command(name = "invword", version, about = "Invariant formulas for the permutation-group word problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Largest group or input domain enumerated.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub max_elements: usize,
    /// Largest subgroup list enumerated.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub max_subgroups: usize,
    /// Add wall-clock timings to the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    #[arg(long)]
    pub exhaustive: bool,
    /// Random instances (or inputs) to draw.
    #[arg(long, alias = "samples")]
    pub budget: Option<usize>,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
}

impl Sampling {
    fn sweep_mode(&self, default_budget: Option<usize>) -> SweepMode {
        match (self.exhaustive, self.budget.or(default_budget)) {
            (false, Some(budget)) => SweepMode::Sampled { budget, seed: self.seed },
            _ => SweepMode::Exhaustive,
        }
    }

    fn check_mode(&self) -> CheckMode {
        match (self.exhaustive, self.budget) {
            (true, _) => CheckMode::Exhaustive,
            (false, Some(samples)) => CheckMode::Sampled { samples, seed: self.seed },
            _ => CheckMode::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Layout {
    /// `Q ≤ G^{2k}` with `g_1 = g_{2k} = 1`, acting on both sides.
    LeftRight,
    /// `G^k` acting on the left of each matrix.
    Left,
    /// The shifted-diagonal image of `G^{k-1}`.
    Shifted,
}

impl Layout {
    fn constraint(self) -> Constraint {
        match self {
            Layout::LeftRight => Constraint::QLeftRight,
            Layout::Left => Constraint::FullPower,
            Layout::Shifted => Constraint::ShiftedDiagonal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    Intersection,
    Shrinkage,
    Support,
    Diag,
    Quotient,
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FpLemma {
    Intersection,
    Shrinkage,
    PerpUnique,
    DimBound,
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GridFormat {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a Σ/Π word-problem formula for the group's degree.
    Construct {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "sigma")]
        polarity: String,
        /// Use the block split even when `k^{1/d}` is integral.
        #[arg(long)]
        general: bool,
        #[arg(long, default_value_t = 1)]
        u0: usize,
        #[arg(long, default_value_t = 1)]
        uk: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a formula against the word oracle and the shifted-diagonal action.
    Verify {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        k: usize,
        /// Construction depth parameter, for the predicted size.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 1)]
        u0: usize,
        #[arg(long, default_value_t = 1)]
        uk: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Syntactic and semantic stabilizers of a formula.
    Stabilizer {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "left-right")]
        layout: Layout,
        #[arg(long)]
        out_h: Option<PathBuf>,
        #[arg(long)]
        out_k: Option<PathBuf>,
    },
    /// `μ(H, K)` in the left-right layout.
    Mu {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long = "H")]
        h: PathBuf,
        /// Must be a semantic stabilizer; the caller attests this.
        #[arg(long = "K")]
        kk: PathBuf,
    },
    /// Interval for `β_d(H, K)` over a tiny `Q`.
    Beta {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
        /// Defaults to `left` for abelian groups and `left-right` otherwise.
        #[arg(long, value_enum)]
        layout: Option<Layout>,
        /// Defaults to the image of `G^{k-1}`.
        #[arg(long = "H")]
        h: Option<PathBuf>,
        #[arg(long = "K")]
        kk: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Nonabelian lemma sweeps over `G × G`.
    Sweep {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// `μ_p` of a subspace given by a basis file.
    FpMu {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        basis: PathBuf,
    },
    /// F_p and Z/q lemma sweeps.
    FpSweep {
        #[arg(long, value_enum)]
        lemma: FpLemma,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Order, simplicity, `q(G)`, `n(G)` and the minimal faithful degree.
    GroupParams {
        #[arg(long)]
        group: PathBuf,
    },
    /// Build, verify and bound every `(n, k, d)` cell over `C_n`.
    Grid {
        /// Comma-separated; an empty list gives an empty grid.
        #[arg(long, default_value = "2,3")]
        n: String,
        #[arg(long, default_value = "2,4,9")]
        k: String,
        #[arg(long, default_value = "1,2")]
        d: String,
        #[arg(long, default_value = "sigma")]
        polarity: String,
        #[arg(long, value_enum, default_value = "json")]
        format: GridFormat,
        /// Flip one literal in the cell with this zero-based index.
        #[arg(long)]
        mutate: Option<usize>,
        #[command(flatten)]
        sampling: Sampling,
    },
}

/// Text to print and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

fn ceilings(cli: &Cli) -> Result<Ceilings> {
    if cli.max_elements == 0 || cli.max_subgroups == 0 {
        return Err(Error::Invalid("ceilings must be positive".into()));
    }
    Ok(Ceilings {
        elements: cli.max_elements,
        subgroups: cli.max_subgroups,
    })
}

fn load_group(path: &Path, c: &Ceilings) -> Result<Arc<GroupTable>> {
    Ok(Arc::new(io::load_group(path, c)?))
}

fn point(u: usize, n: usize, name: &str) -> Result<usize> {
    if u == 0 || u > n {
        return Err(Error::Invalid(format!("{name} must lie in 1..={n}")));
    }
    Ok(u - 1)
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
        .collect()
}

fn subgroup_of(q: &TupleGroup, h: &SubgroupHandle) -> Vec<Vec<usize>> {
    h.elements().map(|e| q.tuple(e).iter().map(|&x| x as usize + 1).collect()).collect()
}

fn spec_subgroup(q: &TupleGroup, spec: &TupleSpec) -> SubgroupHandle {
    SubgroupHandle::from_elements(q.order(), (0..q.order()).filter(|&x| spec.contains_tuple(&q.tuple(x))))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let c = ceilings(cli)?;
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Construct {
            group,
            k,
            d,
            polarity,
            general,
            u0,
            uk,
            out,
        } => {
            let g = load_group(group, &c)?;
            let n = g.degree();
            let pol: Polarity = polarity.parse()?;
            let mut params = ConstructionParams::new(n, *k, *d, pol);
            params.u0 = point(*u0, n, "u0")?;
            params.uk = point(*uk, n, "uk")?;
            let exact = !general && exact_root(*k, *d).is_some();
            let f = if exact { build_exact(&params)? } else { build_general(&params)? };
            let mut r = Report::new(
                "construct",
                json!({"group": group, "n": n, "k": k, "d": d, "polarity": pol, "u0": u0, "uk": uk, "mode": if exact {"exact"} else {"general"}}),
            );
            r.claim("size", f.size(), Provenance::Measured)
                .claim("depth", f.depth(), Provenance::Measured);
            if exact {
                let pred = predicted_size(n, *k, *d).expect("integral root");
                r.check("size_law", pred.to_string(), Provenance::PaperFormula, f.size() as u128 == pred)
                    .check("depth_law", d + 1, Provenance::PaperFormula, f.depth() as usize == d + 1);
            } else {
                let env = general_envelope(n, *k, *d);
                r.check("within_envelope", env.to_string(), Provenance::PaperFormula, f.size() as u128 <= env)
                    .check("depth_at_most", d + 1, Provenance::PaperFormula, f.depth() as usize <= d + 1);
            }
            match out {
                Some(path) => {
                    io::write_file(path, &(to_text(&f) + "\n"))?;
                    r.section("formula_file", path);
                }
                None => {
                    r.section("formula", to_text(&f));
                }
            }
            r
        }
        Command::Verify {
            formula,
            group,
            k,
            d,
            u0,
            uk,
            sampling,
        } => {
            let g = load_group(group, &c)?;
            let n = g.degree();
            let f = io::load_formula(formula)?;
            if f.var_count() > k * n * n {
                return Err(Error::Invalid(format!("formula uses variables beyond k·n² = {}", k * n * n)));
            }
            let predicted = d.and_then(|d| predicted_size(n, *k, d));
            let rep = verify_construction(&f, &g, *k, (point(*u0, n, "u0")?, point(*uk, n, "uk")?), predicted, sampling.check_mode())?;
            let mut r = Report::new("verify", json!({"formula": formula, "group": group, "k": k, "d": d, "u0": u0, "uk": uk}));
            r.claim("size", rep.size, Provenance::Measured)
                .claim("depth", rep.depth, Provenance::Measured)
                .check("semantic_match", rep.mismatches, Provenance::DerivedOracle, rep.semantic_match)
                .check("invariance", rep.invariance, Provenance::Measured, rep.invariance);
            if let (Some(p), Some(ok)) = (rep.predicted_size, rep.size_match) {
                r.check("size_law", p.to_string(), Provenance::PaperFormula, ok);
            }
            if let Some(t) = &rep.first_mismatch {
                r.counterexamples.push(json!({"tuple": t}));
            }
            r.section("verification", &rep);
            r
        }
        Command::Stabilizer {
            formula,
            group,
            k,
            layout,
            out_h,
            out_k,
        } => {
            let g = load_group(group, &c)?;
            let f = io::load_formula(formula)?;
            let q = TupleSpec::new(g.clone(), *k, layout.constraint())?.enumerate(&c)?;
            let h = word::syntactic_stabilizer(&f, &q);
            let kk = word::semantic_stabilizer(&f, &q, c.elements)?;
            let mut r = Report::new("stabilizer", json!({"formula": formula, "group": group, "k": k, "layout": format!("{layout:?}")}));
            r.claim("q_order", q.order(), Provenance::Measured)
                .claim("syntactic_order", h.order(), Provenance::Measured)
                .claim("semantic_order", kk.order(), Provenance::Measured)
                .check("syntactic_within_semantic", true, Provenance::Measured, h.is_subgroup_of(&kk));
            if let Some(p) = out_h {
                io::write_file(p, &io::subgroup_to_text(&q, &h))?;
            }
            if let Some(p) = out_k {
                io::write_file(p, &io::subgroup_to_text(&q, &kk))?;
            }
            r
        }
        Command::Mu { group, k, h, kk } => {
            let g = load_group(group, &c)?;
            let q = TupleSpec::new(g, *k, Constraint::QLeftRight)?.enumerate(&c)?;
            let hs = io::load_subgroup(h, &q)?;
            let ks = io::load_subgroup(kk, &q)?;
            if !hs.is_subgroup_of(&ks) {
                return Err(Error::Precondition("mu needs H ≤ K".into()));
            }
            let (eh, ek) = (edge_set(&q.subgroup(&hs))?, edge_set(&q.subgroup(&ks))?);
            let mu = mu_nonabelian(&q.subgroup(&hs), &q.subgroup(&ks), q.order() as u128)?;
            let mut r = Report::new("mu", json!({"group": group, "k": k, "H": h, "K": kk}));
            r.claim("h_order", hs.order(), Provenance::Measured)
                .claim("k_order", ks.order(), Provenance::Measured)
                .claim("edges_h", json!(eh.edge_list()), Provenance::Measured)
                .claim("edges_k", json!(ek.edge_list()), Provenance::Measured)
                .claim("mu", mu, Provenance::Measured);
            r
        }
        Command::Beta {
            group,
            k,
            d,
            rmax,
            layout,
            h,
            kk,
            budget,
        } => {
            let g = load_group(group, &c)?;
            let layout = layout.unwrap_or(if g.is_abelian() { Layout::Left } else { Layout::LeftRight });
            let q = TupleSpec::new(g.clone(), *k, layout.constraint())?.enumerate(&c)?;
            let default = || -> Result<SubgroupHandle> {
                let spec = match layout {
                    Layout::Left => TupleSpec::new(g.clone(), *k, Constraint::ZeroSum)?,
                    _ => TupleSpec::new(g.clone(), *k, Constraint::ShiftedDiagonal)?,
                };
                Ok(spec_subgroup(&q, &spec))
            };
            let hs = match h {
                Some(p) => io::load_subgroup(p, &q)?,
                None => default()?,
            };
            let ks = match kk {
                Some(p) => io::load_subgroup(p, &q)?,
                None => default()?,
            };
            let (mu, cc) = if layout == Layout::Left && g.is_standard_cyclic() && is_prime(g.order()) {
                (fp::mu_p(&cyclic_subspace(&q, &hs)).mu, g.order())
            } else if layout == Layout::LeftRight && !g.is_abelian() && is_simple(&g, &c)? {
                (mu_nonabelian(&q.subgroup(&hs), &q.subgroup(&ks), q.order() as u128)?, min_faithful_degree(&g, &c)?)
            } else {
                return Err(Error::Precondition(
                    "the lower end needs C_p in the left layout or a nonabelian simple group in the left-right layout".into(),
                ));
            };
            let mut engine = BetaEngine::new(q.clone(), *rmax, &c, DEFAULT_MAX_SUBGROUPS)?;
            if let Some(b) = budget {
                engine.budget = *b;
            }
            let value = engine.evaluate(&hs, &ks, *d)?;
            let interval = BetaInterval::new(&value, *rmax, mu, cc);
            let mut r = Report::new("beta", json!({"group": group, "k": k, "d": d, "rmax": rmax, "layout": format!("{layout:?}")}));
            r.claim("lo", if interval.lo.is_finite() { json!(interval.lo) } else { json!("inf") }, Provenance::PaperFormula)
                .claim("hi", interval.hi.clone(), Provenance::Measured)
                .claim("exact_unbounded_r", value.exact.map_or(json!("inf"), |v| json!(v)), Provenance::Measured)
                .claim("budget_exhausted", value.budget_exhausted, Provenance::Measured)
                .check("lo_le_hi", interval.sandwich(), Provenance::Measured, interval.sandwich());
            if !value.witness.is_empty() {
                let good = check_good_tuple(&engine, &hs, &ks, &value.witness);
                r.check("witness_is_good", json!(good), Provenance::Measured, good.all());
                let comps: Vec<_> = value
                    .witness
                    .iter()
                    .map(|w| json!({"H_i": w.h.order(), "U_i": w.u.order(), "L_i": w.l.order(), "V_i": w.v.order()}))
                    .collect();
                r.section("witness_orders", comps);
            }
            r.section("interval", &interval);
            r.section("h", subgroup_of(&q, &hs));
            r
        }
        Command::Sweep { lemma, group, k, sampling } => {
            if *k != 2 {
                return Err(Error::Invalid("nonabelian sweeps run over G × G, so k must be 2".into()));
            }
            let g = load_group(group, &c)?;
            let mut r = Report::new("sweep", json!({"lemma": format!("{lemma:?}"), "group": group, "k": k}));
            let rep = match lemma {
                Lemma::Intersection | Lemma::Shrinkage | Lemma::Literal => {
                    let ps = PairSetting::new(g, &c)?;
                    match lemma {
                        Lemma::Intersection => na_sweeps::intersection(&ps, sampling.sweep_mode(Some(10_000)))?,
                        Lemma::Shrinkage => na_sweeps::shrinkage(&ps, sampling.sweep_mode(Some(10_000)))?,
                        _ => na_sweeps::literal(&ps, &c)?,
                    }
                }
                _ => {
                    let sq = Square::new(g, Constraint::FullPower, &c)?;
                    match lemma {
                        Lemma::Support => structure::support(&sq, sampling.sweep_mode(None), &c)?,
                        Lemma::Diag => structure::diag_to_full(&sq, &c)?,
                        _ => structure::quotient_g(&sq, &c)?,
                    }
                }
            };
            r.claim("instances", rep.instances, Provenance::Measured)
                .claim("excluded", rep.excluded, Provenance::Measured)
                .sweep(&rep);
            r
        }
        Command::FpMu { p, k, basis } => {
            let v = io::load_basis(basis, *p, *k)?;
            let w = fp::mu_p(&v);
            let mut r = Report::new("fp-mu", json!({"p": p, "k": k, "basis": basis}));
            r.claim("dim", v.dim(), Provenance::Measured)
                .claim("mu", w.mu, Provenance::Measured)
                .section("witness", &w);
            r
        }
        Command::FpSweep { lemma, p, q, k, sampling } => {
            let mode = sampling.sweep_mode(None);
            let prime = || p.ok_or_else(|| Error::Invalid("--p is required".into()));
            let rep = match lemma {
                FpLemma::Intersection => fp_sweeps::intersection(prime()?, *k, mode),
                FpLemma::Shrinkage => fp_sweeps::shrinkage(prime()?, *k, mode)?,
                FpLemma::PerpUnique => fp_sweeps::perp_unique(prime()?, *k, mode)?,
                FpLemma::DimBound => fp_sweeps::dim_bound(q.or(*p).ok_or_else(|| Error::Invalid("--q is required".into()))?, *k, &c)?,
                FpLemma::Literal => fp_sweeps::literal_mu(q.or(*p).ok_or_else(|| Error::Invalid("--q is required".into()))?, *k, &c)?,
            };
            if matches!(lemma, FpLemma::Intersection | FpLemma::Shrinkage | FpLemma::PerpUnique) {
                FpSubspace::span(prime()?, *k, std::iter::empty())?;
            }
            let mut r = Report::new("fp-sweep", json!({"lemma": format!("{lemma:?}"), "p": p, "q": q, "k": k}));
            r.claim("instances", rep.instances, Provenance::Measured).sweep(&rep);
            r
        }
        Command::GroupParams { group } => {
            let g = load_group(group, &c)?;
            let simple = is_simple(&g, &c)?;
            let mut r = Report::new("group-params", json!({"group": group}));
            r.claim("degree", g.degree(), Provenance::Measured)
                .claim("order", g.order(), Provenance::Measured)
                .claim("abelian", g.is_abelian(), Provenance::Measured)
                .claim("simple", simple, Provenance::Measured)
                .claim("q", q_param(&g), Provenance::Measured);
            if simple {
                let m = min_faithful_degree(&g, &c)?;
                let bound = (g.order() as f64).sqrt();
                r.claim("min_faithful_degree", m, Provenance::Measured);
                if !g.is_abelian() {
                    r.check("degree_at_most_sqrt_order", bound, Provenance::Measured, m as f64 <= bound);
                }
            }
            match n_param(&g, &c) {
                Ok(n) => r.claim("n", n, Provenance::Measured),
                Err(e) => r.claim("n", format!("unavailable: {e}"), Provenance::Measured),
            };
            r
        }
        Command::Grid {
            n,
            k,
            d,
            polarity,
            format,
            mutate,
            sampling,
        } => {
            let cells = grid::product(&parse_list(n)?, &parse_list(k)?, &parse_list(d)?);
            let opts = GridOptions {
                polarity: polarity.parse()?,
                mode: sampling.check_mode(),
                mutate: *mutate,
                ..GridOptions::default()
            };
            let rows = grid::run_grid(&cells, &opts, &c)?;
            let pass = rows.iter().all(|r| r.pass);
            if *format == GridFormat::Tsv {
                return Ok(Outcome {
                    text: grid_tsv(&rows),
                    pass,
                });
            }
            let mut r = Report::new("grid", json!({"n": n, "k": k, "d": d, "polarity": polarity, "mutate": mutate}));
            r.check("rows_pass", rows.iter().filter(|r| r.pass).count(), Provenance::Measured, pass)
                .section("rows", &rows);
            r
        }
    };
    if cli.timings {
        report.timing("total", start);
    }
    Ok(Outcome {
        text: report.to_json() + "\n",
        pass: report.pass,
    })
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.report {
                Some(path) => io::write_file(path, &out.text),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
