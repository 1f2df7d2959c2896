use std::fmt;

use serde::{Deserialize, Serialize};

use crate::equality::{Counterexample, EqualityReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The law could not be decided with the available strategy.
    Unknown,
}

/// Outcome of checking one law for one subject.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub axiom: String,
    pub model: String,
    pub subject: String,
    pub strategy: String,
    pub checked: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    pub seed: u64,
    pub verdict: Verdict,
}

impl LawReport {
    pub fn from_equality(
        axiom: impl Into<String>,
        model: impl Into<String>,
        subject: impl Into<String>,
        strategy: impl Into<String>,
        seed: u64,
        eq: EqualityReport,
    ) -> LawReport {
        LawReport {
            axiom: axiom.into(),
            model: model.into(),
            subject: subject.into(),
            strategy: strategy.into(),
            checked: eq.checked,
            violations: eq.violations,
            verdict: if eq.violations == 0 {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            counterexample: eq.counterexample,
            seed,
        }
    }

    pub fn unknown(
        axiom: impl Into<String>,
        model: impl Into<String>,
        subject: impl Into<String>,
        reason: impl Into<String>,
        seed: u64,
    ) -> LawReport {
        LawReport {
            axiom: axiom.into(),
            model: model.into(),
            subject: subject.into(),
            strategy: reason.into(),
            checked: 0,
            violations: 0,
            counterexample: None,
            seed,
            verdict: Verdict::Unknown,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unknown => "UNKNOWN",
        };
        write!(
            f,
            "{verdict:<7} {:<14} {:<12} {:<24} {:>8} checked {:>6} violations",
            self.axiom, self.model, self.subject, self.checked, self.violations
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "  at {}: {} != {}", c.point, c.lhs, c.rhs)?;
        }
        Ok(())
    }
}
