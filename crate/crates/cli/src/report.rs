use std::path::Path;

use levy_mp::levy::ConditionReport;
use levy_mp::verify::{write_scoreboard, CheckResult, ContainmentProfile};
use levy_mp::{Verdict, SCHEMA_VERSION};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// One mollification level (or the unmollified problem).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub label: String,
    pub mollification: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ensemble_digest: Option<String>,
}

/// Everything in `report.json`. Contains no timestamps, so equal seeds give
/// byte-identical files; wall-clock data goes to `meta.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub name: String,
    pub seed: u64,
    pub config_hash: String,
    pub levels: Vec<LevelSummary>,
    pub conditions: Vec<ConditionReport>,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub containment: Option<ContainmentProfile>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(name: &str, seed: u64, config_hash: String) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            name: name.to_string(),
            seed,
            config_hash,
            levels: Vec::new(),
            conditions: Vec::new(),
            checks: Vec::new(),
            containment: None,
            verdict: Verdict::Pass,
        }
    }

    /// Fail if any check failed, otherwise pass; inconclusive rows are ignored.
    pub fn finish(&mut self) {
        self.verdict = if self.checks.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Fail => 1,
            _ => 0,
        }
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(self).map_err(levy_mp::Error::from)?;
        text.push('\n');
        let path = dir.join("report.json");
        std::fs::write(&path, text).map_err(CliError::io(path.display()))?;
        let path = dir.join("scoreboard.csv");
        let file = std::fs::File::create(&path).map_err(CliError::io(path.display()))?;
        write_scoreboard(&self.checks, std::io::BufWriter::new(file))?;
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Meta {
    pub schema_version: u32,
    pub version: String,
    pub config_path: String,
    /// Seconds since the Unix epoch.
    pub started: f64,
    pub finished: f64,
    pub threads: usize,
    pub exit_code: i32,
}

impl Meta {
    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let path = dir.join("meta.json");
        let text = serde_json::to_string_pretty(self).map_err(levy_mp::Error::from)?;
        std::fs::write(&path, text + "\n").map_err(CliError::io(path.display()))
    }
}
