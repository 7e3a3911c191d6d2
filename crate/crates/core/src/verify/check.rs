//! Outcome of a statistical check and the CSV scoreboard.

use std::io::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::report::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// `statistic ≤ bound`.
    Bound,
    /// `statistic = target`.
    Equality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub kind: CheckKind,
    pub statistic: f64,
    pub bound_or_target: f64,
    /// Monte Carlo standard error of `statistic`.
    pub std_error: f64,
    /// Deterministic error allowance (time discretization, interpolation).
    #[serde(default)]
    pub bias_budget: f64,
    pub verdict: Verdict,
    pub n_samples: usize,
    /// SHA-256 of the canonical JSON of the inputs.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub inputs_hash: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CheckResult {
    /// Pass iff `statistic ≤ bound + 3·SE`.
    pub fn bound(id: &str, statistic: f64, bound: f64, std_error: f64, n_samples: usize) -> Self {
        Self::new(id, CheckKind::Bound, statistic, bound, std_error, 0.0, n_samples)
    }

    /// Pass iff `|statistic − target| ≤ 3·SE + budget`.
    pub fn equality(id: &str, statistic: f64, target: f64, std_error: f64, bias_budget: f64, n_samples: usize) -> Self {
        Self::new(id, CheckKind::Equality, statistic, target, std_error, bias_budget, n_samples)
    }

    fn new(id: &str, kind: CheckKind, statistic: f64, target: f64, std_error: f64, bias_budget: f64, n_samples: usize) -> Self {
        let mut r = Self {
            check_id: id.to_string(),
            kind,
            statistic,
            bound_or_target: target,
            std_error: if std_error.is_nan() { std_error } else { std_error.max(0.0) },
            bias_budget: bias_budget.max(0.0),
            verdict: Verdict::Inconclusive,
            n_samples,
            inputs_hash: String::new(),
            note: String::new(),
        };
        r.verdict = r.decide();
        r
    }

    fn decide(&self) -> Verdict {
        if self.n_samples == 0 || self.statistic.is_nan() || self.std_error.is_nan() || self.bound_or_target.is_nan() {
            return Verdict::Inconclusive;
        }
        let slack = 3.0 * self.std_error + self.bias_budget;
        Verdict::from_bool(match self.kind {
            CheckKind::Bound => self.statistic <= self.bound_or_target + slack,
            CheckKind::Equality => (self.statistic - self.bound_or_target).abs() <= slack,
        })
    }

    pub fn with_inputs<S: Serialize>(mut self, inputs: &S) -> Self {
        self.inputs_hash = hash_inputs(inputs);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn with_verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }

    /// `|statistic − target|` in units of the standard error.
    pub fn z_score(&self) -> f64 {
        (self.statistic - self.bound_or_target).abs() / self.std_error
    }
}

pub fn hash_inputs<S: Serialize>(inputs: &S) -> String {
    let text = serde_json::to_string(inputs).unwrap_or_default();
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// `check_id,statistic,bound_or_target,std_error,verdict` rows.
pub fn write_scoreboard<W: Write>(results: &[CheckResult], mut w: W) -> Result<()> {
    writeln!(w, "check_id,statistic,bound_or_target,std_error,verdict")?;
    for r in results {
        writeln!(
            w,
            "{},{:e},{:e},{:e},{}",
            r.check_id, r.statistic, r.bound_or_target, r.std_error, r.verdict
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_rule() {
        assert_eq!(CheckResult::bound("a", 1.2, 1.0, 0.1, 10).verdict, Verdict::Pass);
        assert_eq!(CheckResult::bound("a", 1.31, 1.0, 0.1, 10).verdict, Verdict::Fail);
        assert_eq!(CheckResult::equality("b", 0.25, 0.0, 0.1, 0.0, 10).verdict, Verdict::Pass);
        assert_eq!(CheckResult::equality("b", 0.35, 0.0, 0.1, 0.0, 10).verdict, Verdict::Fail);
        assert_eq!(CheckResult::equality("b", 0.35, 0.0, 0.1, 0.06, 10).verdict, Verdict::Pass);
        assert_eq!(CheckResult::bound("c", f64::NAN, 1.0, 0.1, 10).verdict, Verdict::Inconclusive);
        assert_eq!(CheckResult::bound("c", 0.0, 1.0, 0.0, 0).verdict, Verdict::Inconclusive);
    }

    #[test]
    fn scoreboard_and_hash() {
        let r = CheckResult::bound("m", 0.5, 1.0, 0.0, 3).with_inputs(&("x", 1));
        assert_eq!(r.inputs_hash.len(), 64);
        assert_eq!(r.inputs_hash, hash_inputs(&("x", 1)));
        let mut buf = Vec::new();
        write_scoreboard(&[r], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "check_id,statistic,bound_or_target,std_error,verdict\nm,5e-1,1e0,0e0,pass\n"
        );
    }
}
