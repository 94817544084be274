//! Run reports: one JSON object per command, TSV for grids.
//!
//! Schema `invword.report/1`:
//! ```text
//! {
//!   "schema": "invword.report/1",
//!   "command": "verify",
//!   "config": { ... echo of the inputs ... },
//!   "claims": [ {"name", "value", "provenance", "pass"?}, ... ],
//!   "sections": { name: any JSON },
//!   "counterexamples": [ ... ],
//!   "pass": true,
//!   "timings_ms": { ... }          // only with --timings
//! }
//! ```
//! `provenance` is `measured` for values computed by this run,
//! `paper-formula` for closed forms evaluated at the run's parameters and
//! `derived-oracle` for values from an independent brute-force oracle.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "invword.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Measured,
    PaperFormula,
    DerivedOracle,
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub value: Value,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: Value,
    pub claims: Vec<Claim>,
    pub sections: BTreeMap<String, Value>,
    pub counterexamples: Vec<Value>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: Value) -> Report {
        Report {
            schema: SCHEMA,
            command: command.into(),
            config,
            claims: Vec::new(),
            sections: BTreeMap::new(),
            counterexamples: Vec::new(),
            pass: true,
            timings_ms: None,
        }
    }

    pub fn claim(&mut self, name: &str, value: impl Into<Value>, provenance: Provenance) -> &mut Self {
        self.claims.push(Claim {
            name: name.into(),
            value: value.into(),
            provenance,
            pass: None,
        });
        self
    }

    /// A claim that is also an assertion; a failure fails the report.
    pub fn check(&mut self, name: &str, value: impl Into<Value>, provenance: Provenance, ok: bool) -> &mut Self {
        self.pass &= ok;
        self.claims.push(Claim {
            name: name.into(),
            value: value.into(),
            provenance,
            pass: Some(ok),
        });
        self
    }

    pub fn section(&mut self, name: &str, value: impl Serialize) -> &mut Self {
        self.sections
            .insert(name.into(), serde_json::to_value(value).expect("report values serialize"));
        self
    }

    /// Folds in a sweep: counterexamples are copied and a failing sweep fails the report.
    pub fn sweep(&mut self, rep: &crate::sweep::WitnessReport) -> &mut Self {
        self.pass &= rep.ok();
        self.counterexamples.extend(rep.counterexamples.iter().cloned());
        self.section(&rep.lemma.clone(), rep)
    }

    pub fn timing(&mut self, name: &str, since: Instant) {
        self.timings_ms
            .get_or_insert_with(BTreeMap::new)
            .insert(name.into(), since.elapsed().as_secs_f64() * 1e3);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// One row of a grid table.
#[derive(Clone, Debug, Serialize)]
pub struct GridRow {
    pub group: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub polarity: String,
    /// Lower bound and where it came from.
    pub lower: Option<f64>,
    pub lower_provenance: Provenance,
    pub measured: u64,
    pub depth: u32,
    pub predicted: Option<u128>,
    pub envelope: u128,
    pub semantic_mode: String,
    pub semantic_match: bool,
    pub invariance: bool,
    pub pass: bool,
}

pub const GRID_HEADER: &str =
    "group\tn\tk\td\tpolarity\tlower\tlower_provenance\tmeasured\tdepth\tpredicted\tenvelope\tsemantic\tinvariant\tpass";

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".into(), |v| v.to_string())
}

pub fn grid_tsv(rows: &[GridRow]) -> String {
    let mut out = String::from(GRID_HEADER);
    out.push('\n');
    for r in rows {
        let prov = serde_json::to_value(r.lower_provenance).expect("serializes");
        let lower = r.lower.map(|v| format!("{v:.6}"));
        let line = [
            r.group.clone(),
            r.n.to_string(),
            r.k.to_string(),
            r.d.to_string(),
            r.polarity.clone(),
            opt(&lower),
            prov.as_str().unwrap_or("").to_string(),
            r.measured.to_string(),
            r.depth.to_string(),
            opt(&r.predicted),
            r.envelope.to_string(),
            format!("{}:{}", r.semantic_mode, r.semantic_match),
            r.invariance.to_string(),
            if r.pass { "PASS" } else { "FAIL" }.to_string(),
        ];
        out.push_str(&line.join("\t"));
        out.push('\n');
    }
    out
}
