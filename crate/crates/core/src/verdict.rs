use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    HypothesisUnmet,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::HypothesisUnmet => "hypothesis-unmet",
        })
    }
}

/// One verifier result for one target (knot, diagram, or star placement).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub suite: String,
    pub target: String,
    pub outcome: Outcome,
    pub detail: String,
    pub payload: BTreeMap<String, i64>,
}

impl VerdictRecord {
    pub fn new(suite: &str, target: impl Into<String>, outcome: Outcome, detail: impl Into<String>) -> Self {
        VerdictRecord {
            suite: suite.to_string(),
            target: target.into(),
            outcome,
            detail: detail.into(),
            payload: BTreeMap::new(),
        }
    }

    pub fn pass_if(suite: &str, target: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail };
        Self::new(suite, target, outcome, detail)
    }

    pub fn with(mut self, key: &str, value: impl TryInto<i64>) -> Self {
        self.payload
            .insert(key.to_string(), value.try_into().unwrap_or(i64::MAX));
        self
    }

    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }
}

impl fmt::Display for VerdictRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<16} {:<18} {:<16} {}", self.suite, self.target, self.outcome, self.detail)
    }
}
