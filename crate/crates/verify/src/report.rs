use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Failures kept verbatim in a report; further ones are only counted.
pub const MAX_RECORDED_FAILURES: usize = 200;

/// One counterexample: which check broke, and text that reproduces the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub input: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub s: Option<u8>,
    pub seed: u64,
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    /// Set when a budget stopped the run before it finished.
    pub budget_exceeded: Option<String>,
    /// Per-check counters (hypotheses met, shapes seen, ...).
    pub stats: BTreeMap<String, u64>,
    pub elapsed_ms: u64,
    pub pass: bool,
}

impl SuiteReport {
    /// Failures of the named check.
    pub fn failures_of(&self, check: &str) -> usize {
        self.failures.iter().filter(|f| f.check == check).count()
    }

    pub fn stat(&self, key: &str) -> u64 {
        self.stats.get(key).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut line = format!(
            "{}: {} ({} cases, {} failures, seed {}, {} ms)",
            self.suite,
            if self.pass { "pass" } else { "FAIL" },
            self.cases,
            self.failure_count,
            self.seed,
            self.elapsed_ms
        );
        if let Some(b) = &self.budget_exceeded {
            line.push_str(&format!(" [budget: {b}]"));
        }
        line
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Colour count; each suite has its own default.
    pub s: Option<u8>,
    /// Largest pattern size for exhaustive scans.
    pub max_size: Option<usize>,
    pub seed: u64,
    /// Per-instance enumeration budget.
    pub budget: usize,
    /// Number of random cases in the randomized part.
    pub samples: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            s: None,
            max_size: None,
            seed: 1,
            budget: 200_000,
            samples: None,
        }
    }
}

/// Accumulates cases, failures and counters for one slice of a suite.
/// Slices are merged in a fixed order so reports do not depend on thread
/// scheduling.
#[derive(Clone, Debug, Default)]
pub struct Recorder {
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub stats: BTreeMap<String, u64>,
    pub budget_exceeded: Option<String>,
}

impl Recorder {
    pub fn case(&mut self) {
        self.cases += 1;
    }

    pub fn cases(&mut self, n: u64) {
        self.cases += n;
    }

    pub fn check(&mut self, ok: bool, check: &str, input: impl FnOnce() -> String) {
        if !ok {
            self.fail(check, input());
        }
    }

    pub fn fail(&mut self, check: &str, input: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(Failure {
                check: check.to_string(),
                input,
            });
        }
    }

    pub fn stat(&mut self, key: &str, n: u64) {
        *self.stats.entry(key.to_string()).or_insert(0) += n;
    }

    pub fn budget(&mut self, what: String) {
        if self.budget_exceeded.is_none() {
            self.budget_exceeded = Some(what);
        }
    }

    pub fn merge(&mut self, other: Recorder) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
        for (k, v) in other.stats {
            *self.stats.entry(k).or_insert(0) += v;
        }
        if self.budget_exceeded.is_none() {
            self.budget_exceeded = other.budget_exceeded;
        }
    }

    pub fn merge_all(parts: impl IntoIterator<Item = Recorder>) -> Recorder {
        let mut out = Recorder::default();
        for p in parts {
            out.merge(p);
        }
        out
    }

    pub fn into_report(self, suite: &str, opts: &SuiteOptions, s: Option<u8>, elapsed_ms: u64) -> SuiteReport {
        let pass = self.failure_count == 0 && self.budget_exceeded.is_none();
        SuiteReport {
            schema: 1,
            suite: suite.to_string(),
            s,
            seed: opts.seed,
            cases: self.cases,
            failure_count: self.failure_count,
            failures: self.failures,
            budget_exceeded: self.budget_exceeded,
            stats: self.stats,
            elapsed_ms,
            pass,
        }
    }
}
