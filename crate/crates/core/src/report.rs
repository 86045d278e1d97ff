//! Check results with witnesses, plus recorded facts (ranks, dimensions, verdicts).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::{render_vec, Scalar};

/// Maximum number of witnesses retained per check.
pub const WITNESS_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub cases: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Fact {
    Flag(bool),
    Count(usize),
    Text(String),
}

impl From<bool> for Fact {
    fn from(b: bool) -> Self {
        Fact::Flag(b)
    }
}

impl From<usize> for Fact {
    fn from(n: usize) -> Self {
        Fact::Count(n)
    }
}

impl From<String> for Fact {
    fn from(s: String) -> Self {
        Fact::Text(s)
    }
}

impl From<&str> for Fact {
    fn from(s: &str) -> Self {
        Fact::Text(s.to_string())
    }
}

impl std::fmt::Display for Fact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Fact::Flag(b) => write!(f, "{b}"),
            Fact::Count(n) => write!(f, "{n}"),
            Fact::Text(s) => write!(f, "{s}"),
        }
    }
}

/// Named checks (pass/fail with witnesses) and named facts. Keys are sorted, so
/// serialization is deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: BTreeMap<String, CheckResult>,
    pub facts: BTreeMap<String, Fact>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    fn entry(&mut self, name: &str) -> &mut CheckResult {
        self.checks.entry(name.to_string()).or_default()
    }

    /// Registers a check even if no case is ever recorded for it.
    pub fn touch(&mut self, name: &str) {
        self.entry(name);
    }

    /// Records one case comparing two coordinate vectors exactly.
    pub fn compare(&mut self, name: &str, indices: &[usize], lhs: &[Scalar], rhs: &[Scalar]) -> bool {
        let ok = lhs == rhs;
        self.record(name, indices, ok, || (render_vec(lhs), render_vec(rhs)));
        ok
    }

    /// Records one boolean case; a failing case stores a witness without values.
    pub fn assert(&mut self, name: &str, indices: &[usize], ok: bool) -> bool {
        self.record(name, indices, ok, || (vec!["false".into()], vec!["true".into()]));
        ok
    }

    /// Records one case with caller-rendered values for the witness.
    pub fn record(
        &mut self,
        name: &str,
        indices: &[usize],
        ok: bool,
        values: impl FnOnce() -> (Vec<String>, Vec<String>),
    ) {
        let e = self.entry(name);
        e.cases += 1;
        if !ok {
            e.failures += 1;
            if e.witnesses.len() < WITNESS_CAP {
                let (lhs, rhs) = values();
                e.witnesses.push(Witness { indices: indices.to_vec(), lhs, rhs });
            }
        }
    }

    pub fn set_fact(&mut self, name: &str, value: impl Into<Fact>) {
        self.facts.insert(name.to_string(), value.into());
    }

    pub fn fact(&self, name: &str) -> Option<&Fact> {
        self.facts.get(name)
    }

    pub fn count_fact(&self, name: &str) -> Option<usize> {
        match self.facts.get(name) {
            Some(Fact::Count(n)) => Some(*n),
            _ => None,
        }
    }

    pub fn flag_fact(&self, name: &str) -> Option<bool> {
        match self.facts.get(name) {
            Some(Fact::Flag(b)) => Some(*b),
            _ => None,
        }
    }

    /// Folds `other` into `self`, prefixing its keys with `prefix.` (no prefix when empty).
    pub fn merge(&mut self, prefix: &str, other: Report) {
        let key = |k: String| if prefix.is_empty() { k } else { format!("{prefix}.{k}") };
        for (k, v) in other.checks {
            let e = self.checks.entry(key(k)).or_default();
            e.cases += v.cases;
            e.failures += v.failures;
            for w in v.witnesses {
                if e.witnesses.len() < WITNESS_CAP {
                    e.witnesses.push(w);
                }
            }
        }
        for (k, v) in other.facts {
            self.facts.insert(key(k), v);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.get(name)
    }

    pub fn check_passed(&self, name: &str) -> bool {
        self.checks.get(name).is_some_and(CheckResult::passed)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| !c.passed())
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn first_witness(&self, name: &str) -> Option<&Witness> {
        self.checks.get(name).and_then(|c| c.witnesses.first())
    }
}
