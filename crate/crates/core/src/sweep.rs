//! Result records for lemma sweeps.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// How a sweep chose its instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum SweepMode {
    Exhaustive,
    Sampled { budget: usize, seed: u64 },
}

impl SweepMode {
    pub fn describe(&self) -> String {
        match self {
            SweepMode::Exhaustive => "exhaustive".into(),
            SweepMode::Sampled { budget, seed } => format!("sampled budget={budget} seed={seed}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub lemma: String,
    pub mode: SweepMode,
    pub instances: u64,
    pub passed: u64,
    /// Candidates dropped because a hypothesis of the lemma failed.
    pub excluded: u64,
    pub counterexamples: Vec<Value>,
    pub extremal: BTreeMap<String, Value>,
}

impl WitnessReport {
    pub fn new(lemma: impl Into<String>, mode: SweepMode) -> WitnessReport {
        WitnessReport {
            lemma: lemma.into(),
            mode,
            instances: 0,
            passed: 0,
            excluded: 0,
            counterexamples: Vec::new(),
            extremal: BTreeMap::new(),
        }
    }

    pub fn pass(&mut self) {
        self.instances += 1;
        self.passed += 1;
    }

    pub fn fail(&mut self, data: Value) {
        self.instances += 1;
        self.counterexamples.push(data);
    }

    pub fn record(&mut self, ok: bool, data: impl FnOnce() -> Value) {
        if ok {
            self.pass();
        } else {
            self.fail(data());
        }
    }

    pub fn exclude(&mut self) {
        self.excluded += 1;
    }

    /// Keep the largest value seen under `key`.
    pub fn track_max(&mut self, key: &str, v: i64) {
        let e = self.extremal.entry(key.to_string()).or_insert(Value::from(v));
        if e.as_i64().is_some_and(|old| v > old) {
            *e = Value::from(v);
        }
    }

    pub fn note(&mut self, key: &str, v: impl Into<Value>) {
        self.extremal.insert(key.to_string(), v.into());
    }

    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty() && self.passed == self.instances
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} instances, {} passed, {} counterexamples, {} excluded ({})",
            self.lemma,
            self.instances,
            self.passed,
            self.counterexamples.len(),
            self.excluded,
            self.mode.describe()
        )
    }
}
