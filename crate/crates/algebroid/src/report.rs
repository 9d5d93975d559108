//! JSON reports for the verification suites. Field order is fixed by
//! declaration order and every collection is ordered, so a report is
//! byte-identical across runs with the same configuration.

use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Common knobs of every randomized suite.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteConfig {
    pub n: usize,
    pub maxdeg: u32,
    pub trials: u64,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(n: usize, maxdeg: u32, trials: u64, seed: u64) -> Self {
        SuiteConfig {
            n,
            maxdeg,
            trials,
            seed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Canonical text of every input slot the axiom instance used.
    pub inputs: Vec<(String, String)>,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: String,
    pub trials: u64,
    pub witnesses: Vec<Witness>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, trials: u64) -> Self {
        CheckResult {
            name: name.into(),
            status: "pass".into(),
            trials,
            witnesses: Vec::new(),
        }
    }

    pub fn fail(name: impl Into<String>, trials: u64, witnesses: Vec<Witness>) -> Self {
        CheckResult {
            name: name.into(),
            status: "fail".into(),
            trials,
            witnesses,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub config: SuiteConfig,
    pub status: String,
    pub axioms: usize,
    pub failures: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(config: SuiteConfig, checks: Vec<CheckResult>) -> Self {
        let failures: Vec<String> = checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name.clone())
            .collect();
        Report {
            tool_version: TOOL_VERSION.into(),
            config,
            status: if failures.is_empty() { "pass" } else { "fail" }.into(),
            axioms: checks.len(),
            failures,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}
