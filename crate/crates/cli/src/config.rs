//! Config files for the bound-verification and minimax commands.

use serde::{Deserialize, Serialize};

use mvbandit_core::experiments::DEFAULT_D6;
use mvbandit_core::{DistributionSpec, PolicyConfig, DEFAULT_A};

use crate::error::{CliError, CliResult};

fn default_a() -> f64 {
    DEFAULT_A
}

/// One tail-bound grid on a single distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailConfig {
    pub name: String,
    pub dist: DistributionSpec,
    pub rho: f64,
    #[serde(default = "default_a")]
    pub a: f64,
    pub s: Vec<u64>,
    pub delta: Vec<f64>,
    pub replications: u64,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl TailConfig {
    /// Cartesian product `s × δ`.
    pub fn grid(&self) -> Vec<(u64, f64)> {
        self.s
            .iter()
            .flat_map(|&s| self.delta.iter().map(move |&d| (s, d)))
            .collect()
    }
}

/// Stopping-time and pull-count checks for one policy on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullsConfig {
    pub name: String,
    pub rho: f64,
    #[serde(default = "default_a")]
    pub a: f64,
    pub arms: Vec<DistributionSpec>,
    pub policy: PolicyConfig,
    pub horizon: u64,
    pub replications: u64,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsConfig {
    #[serde(rename = "tail", default)]
    pub tails: Vec<TailConfig>,
    #[serde(rename = "pulls", default)]
    pub pulls: Vec<PullsConfig>,
}

impl BoundsConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: BoundsConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if cfg.tails.is_empty() && cfg.pulls.is_empty() {
            return Err(CliError::Config(
                "nothing to check: no `[[tail]]` or `[[pulls]]` tables".into(),
            ));
        }
        for t in &cfg.tails {
            if t.s.is_empty() || t.delta.is_empty() {
                return Err(CliError::Config(format!(
                    "tail grid `{}` is empty: `s` and `delta` must be non-empty",
                    t.name
                )));
            }
        }
        Ok(cfg)
    }
}

fn default_minimax_horizons() -> Vec<u64> {
    vec![1_000, 3_000, 10_000, 30_000]
}

fn default_d6() -> f64 {
    DEFAULT_D6
}

fn default_w() -> f64 {
    1.0
}

fn default_minimax_replications() -> u64 {
    1_000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinimaxConfig {
    #[serde(default = "default_minimax_horizons")]
    pub horizons: Vec<u64>,
    #[serde(default)]
    pub rho: f64,
    #[serde(default = "default_d6")]
    pub d6: f64,
    /// Exploration scale of the model-independent MV-DSEE budget.
    #[serde(default = "default_w")]
    pub w: f64,
    #[serde(default = "default_minimax_replications")]
    pub replications: u64,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl Default for MinimaxConfig {
    fn default() -> Self {
        toml::from_str("").expect("defaults")
    }
}

impl MinimaxConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }
}
