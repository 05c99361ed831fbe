//! Run configuration: one TOML file describing an experiment run; every CLI
//! flag is an override of a config key. Identical configs produce
//! byte-identical report files (timestamps go to the metadata file).
//!
//! Schema:
//!
//! ```toml
//! seed = 42                  # master seed for the counter-based streams
//! output_dir = "out"         # where report files land
//!
//! [experiment]
//! name = "cor1-rademacher-cauchy"
//! n_samples = 100000
//! kn = [16, 64, 256, 1024, 4096]
//!
//! [experiment.params]        # experiment-specific knobs (all optional)
//! nu = 0.5                   # cor3-gvg power
//! eps = 2.0                  # bound-check exceedance level
//! preset = "rademacher-deterministic"   # lemma3 / tightness preset
//! mixing = "exponential"     # lemma4 mixing family
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_KN: [u64; 5] = [16, 64, 256, 1024, 4096];
pub const DEFAULT_N_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub experiment: ExperimentConfig,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub n_samples: Option<usize>,
    #[serde(default)]
    pub kn: Option<Vec<u64>>,
    #[serde(default)]
    pub params: ExtraParams,
}

/// Free experiment knobs; unknown keys are rejected so configs stay
/// archivable as the single source of truth.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtraParams {
    pub nu: Option<f64>,
    pub eps: Option<f64>,
    pub preset: Option<String>,
    pub mixing: Option<String>,
}

fn default_seed() -> u64 {
    42
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            output_dir: default_output_dir(),
            experiment: ExperimentConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {path:?}: {e}")))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("config {path:?} violates the schema: {e}")))
    }

    pub fn kn_values(&self) -> Vec<u64> {
        self.experiment
            .kn
            .clone()
            .unwrap_or_else(|| DEFAULT_KN.to_vec())
    }

    pub fn n_samples(&self) -> usize {
        self.experiment.n_samples.unwrap_or(DEFAULT_N_SAMPLES)
    }

    /// Deterministic parameter map embedded in the report (sorted keys).
    pub fn parameter_map(&self, name: &str) -> BTreeMap<String, serde_json::Value> {
        let mut m = BTreeMap::new();
        m.insert("experiment".into(), serde_json::json!(name));
        m.insert("seed".into(), serde_json::json!(self.seed));
        m.insert("n_samples".into(), serde_json::json!(self.n_samples()));
        m.insert("kn".into(), serde_json::json!(self.kn_values()));
        let p = &self.experiment.params;
        if let Some(nu) = p.nu {
            m.insert("nu".into(), serde_json::json!(nu));
        }
        if let Some(eps) = p.eps {
            m.insert("eps".into(), serde_json::json!(eps));
        }
        if let Some(preset) = &p.preset {
            m.insert("preset".into(), serde_json::json!(preset));
        }
        if let Some(mixing) = &p.mixing {
            m.insert("mixing".into(), serde_json::json!(mixing));
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_round_trip_and_unknown_key_rejection() {
        let cfg: RunConfig = toml::from_str(
            r#"
            seed = 7
            output_dir = "reports"
            [experiment]
            name = "cor3-gvg"
            n_samples = 5000
            kn = [16, 64]
            [experiment.params]
            nu = 0.5
            "#,
        )
        .unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.kn_values(), vec![16, 64]);
        assert_eq!(cfg.experiment.params.nu, Some(0.5));

        let err = toml::from_str::<RunConfig>("sead = 7").unwrap_err();
        assert!(err.to_string().contains("sead"));
    }

    #[test]
    fn defaults_apply() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.n_samples(), 100_000);
        assert_eq!(cfg.kn_values(), DEFAULT_KN.to_vec());
    }
}
