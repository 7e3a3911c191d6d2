//! Run configuration, read from TOML (or JSON by extension).

use std::path::{Path, PathBuf};

use levy_mp::analysis::{HarnackConstants, HarnackKernel};
use levy_mp::generator::{Form, TestFunctionSpec};
use levy_mp::levy::{ConditionId, SymbolSpec};
use levy_mp::simulate::{InitialLaw, SchemeSpec};
use levy_mp::verify::{DensityMeasure, KrylovFunction, Probe};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub name: String,
    /// Master seed of every random stream; there is no default.
    pub seed: u64,
    pub symbol: SymbolSpec,
    #[serde(default)]
    pub mollify: Option<MollifyConfig>,
    #[serde(default)]
    pub scheme: Option<SchemeSpec>,
    #[serde(default)]
    pub ensemble: Option<EnsembleConfig>,
    #[serde(default)]
    pub checks: Checks,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Replace every coefficient `c` of the symbol and the scheme by `c ∗ χ_n`
/// for each level `n`; checks then run once per level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MollifyConfig {
    pub levels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleConfig {
    pub paths: usize,
    pub horizon: f64,
    pub dt: f64,
    pub initial: InitialLaw,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Checks {
    pub conditions: Option<ConditionsCheck>,
    pub generator_lattice: Option<LatticeCheck>,
    pub martingale: Option<MartingaleCheck>,
    pub maximal: Option<MaximalCheck>,
    pub krylov: Option<KrylovCheck>,
    pub containment: Option<ContainmentCheck>,
    pub majorant: Option<MajorantCheck>,
    pub resolvent_identity: Option<IdentityCheck>,
    pub harnack_kernel: Option<HarnackCheck>,
}

impl Checks {
    pub fn needs_ensemble(&self) -> bool {
        self.martingale.is_some()
            || self.maximal.is_some()
            || self.krylov.is_some()
            || self.containment.is_some()
            || self.resolvent_identity.is_some()
    }
}

fn density() -> usize {
    8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionsCheck {
    pub ids: Vec<ConditionId>,
    pub radii: Vec<f64>,
    #[serde(default = "density")]
    pub density: usize,
}

fn both_forms() -> Vec<Form> {
    vec![Form::Integro, Form::Fourier]
}

/// `Af` on `points` equally spaced points of `[lo, hi]`, written to
/// `lattice.csv`; with both forms the largest relative gap is checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeCheck {
    pub f: TestFunctionSpec,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    #[serde(default = "both_forms")]
    pub forms: Vec<Form>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MartingaleCase {
    pub f: TestFunctionSpec,
    pub s: f64,
    pub t: f64,
    #[serde(default)]
    pub probes: Vec<Probe>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MartingaleCheck {
    pub cases: Vec<MartingaleCase>,
    /// Verify against this symbol instead of the simulated one.
    #[serde(default)]
    pub against: Option<SymbolSpec>,
    #[serde(default)]
    pub table_spacing: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaximalCheck {
    /// Radii `r` of the starting ball.
    pub inner: Vec<f64>,
    /// Exceedance radii `R ≥ 2r`; pairs violating this are skipped.
    pub outer: Vec<f64>,
    pub times: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KrylovCheck {
    pub u: KrylovFunction,
    pub measure: DensityMeasure,
    pub p: f64,
    pub c: f64,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContainmentCheck {
    pub radii: Vec<f64>,
    pub epsilon: f64,
    pub horizon: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MajorantCheck {
    pub gamma0: f64,
    pub gamma_inf: f64,
    pub horizon: f64,
    pub constant: f64,
    /// Lattice `±k z_max / z_points`, `k = 1..z_points`.
    pub z_max: f64,
    pub z_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityCheck {
    pub phi: TestFunctionSpec,
    pub lambda: f64,
    #[serde(default)]
    pub discount: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarnackCheck {
    pub kernel: HarnackKernel,
    pub constants: HarnackConstants,
    pub samples: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// Used when `--out` is not given.
    pub dir: Option<PathBuf>,
    /// Binary ensemble plus JSON sidecar, one pair per level.
    pub save_ensemble: bool,
    /// Long-format CSV of every path, one file per level.
    pub ensemble_csv: bool,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text, path.extension().and_then(|e| e.to_str()) == Some("json"))
    }

    pub fn parse(text: &str, json: bool) -> Result<Self, CliError> {
        let cfg: Config = if json {
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?
        } else {
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.checks.needs_ensemble() && (self.ensemble.is_none() || self.scheme.is_none()) {
            return Err(CliError::Config("checks on paths need [scheme] and [ensemble] sections".into()));
        }
        if let Some(m) = &self.mollify {
            if m.levels.is_empty() || m.levels.contains(&0) {
                return Err(CliError::Config(
                    "mollification levels must be a nonempty list of positive integers".into(),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
name = "empty"
seed = 7
[symbol]
kind = "isotropic_stable_like"
alpha = { type = "constant", value = 1.5 }
"#;

    #[test]
    fn minimal_config() {
        let c = Config::parse(MINIMAL, false).unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.checks, Checks::default());
        let j = serde_json::to_string(&c).unwrap();
        assert_eq!(Config::parse(&j, true).unwrap(), c);
    }

    #[test]
    fn seed_is_mandatory_and_fields_are_checked() {
        assert!(Config::parse(&MINIMAL.replace("seed = 7", ""), false).is_err());
        assert!(Config::parse(&format!("{MINIMAL}\nbogus = 1"), false).is_err());
        let with_paths = format!("{MINIMAL}\n[checks.maximal]\ninner = [0.5]\nouter = [2.0]\ntimes = [1.0]\n");
        assert!(Config::parse(&with_paths, false).is_err());
    }
}
