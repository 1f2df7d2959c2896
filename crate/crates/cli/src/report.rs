use std::fmt::Write as _;

use diffkit::{LawReport, Verdict};
use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

/// The JSON document emitted by every law-checking subcommand.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub version: u32,
    pub command: String,
    pub model: String,
    pub seed: u64,
    pub results: Vec<LawReport>,
    pub violations_total: u64,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(command: String, model: String, seed: u64, results: Vec<LawReport>, elapsed_ms: u64) -> RunReport {
        let violations_total = results.iter().map(|r| r.violations).sum();
        RunReport {
            version: REPORT_VERSION,
            command,
            model,
            seed,
            results,
            violations_total,
            elapsed_ms,
        }
    }

    pub fn failed(&self) -> bool {
        self.violations_total > 0 || self.results.iter().any(|r| r.verdict == Verdict::Fail)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            writeln!(out, "{r}").unwrap();
        }
        let count = |v: Verdict| self.results.iter().filter(|r| r.verdict == v).count();
        writeln!(
            out,
            "{} laws: {} passed, {} failed, {} unknown; {} violations in {} ms (model {}, seed {})",
            self.results.len(),
            count(Verdict::Pass),
            count(Verdict::Fail),
            count(Verdict::Unknown),
            self.violations_total,
            self.elapsed_ms,
            self.model,
            self.seed
        )
        .unwrap();
        out
    }
}

/// Output of `eval`.
#[derive(Clone, Debug, Serialize)]
pub struct EvalOutput {
    pub version: u32,
    pub command: String,
    pub model: String,
    pub term: String,
    pub dom: String,
    pub cod: String,
    pub at: String,
    pub value: String,
}

/// Output of `derive`.
#[derive(Clone, Debug, Serialize)]
pub struct DeriveOutput {
    pub version: u32,
    pub command: String,
    pub model: String,
    pub term: String,
    pub order: usize,
    pub derivative: String,
    pub dom: String,
    pub cod: String,
}
