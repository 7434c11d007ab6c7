use serde::{Deserialize, Serialize};

use crate::distribution::DistributionSpec;
use crate::error::{Error, Result};
use crate::experiments::Engine;
use crate::instance::{make_instance, BanditInstance, DEFAULT_A};
use crate::policies::{run_policy, PolicyConfig, PolicySpec, RunTrace};
use crate::regret::{RegretAccumulator, RegretReport, TraceSummary};
use crate::stream::RandomStream;

/// A named batch experiment: one instance, several policies and horizons.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub instance: BanditInstance,
    pub policies: Vec<PolicySpec>,
    pub horizons: Vec<u64>,
    pub replications: u64,
    pub seed: u64,
    /// Emit one raw reward trace for plotting.
    pub emit_trace: bool,
}

/// Upper limit on points written per trace series.
pub const MAX_TRACE_POINTS: usize = 10_000;

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        let k = self.instance.num_arms() as u64;
        let ctx = |e: Error| e.in_scenario(&self.name);
        if self.name.is_empty() {
            return Err(Error::Config("scenario name must not be empty".into()));
        }
        if self.policies.is_empty() {
            return Err(ctx(Error::Config("no policies listed".into())));
        }
        if self.horizons.is_empty() {
            return Err(ctx(Error::Config("no horizons listed".into())));
        }
        if self.replications == 0 {
            return Err(ctx(Error::invalid("replications", "must be positive")));
        }
        if let Some(&t) = self.horizons.iter().find(|&&t| t < k) {
            return Err(ctx(Error::HorizonTooShort {
                horizon: t,
                reason: format!("scenario horizons must be at least K = {k}"),
            }));
        }
        for p in &self.policies {
            p.validate(self.instance.num_arms()).map_err(ctx)?;
        }
        Ok(())
    }

    pub fn root_stream(&self) -> RandomStream {
        RandomStream::new(self.seed)
    }

    /// Replication 0 of the first policy at the longest horizon.
    pub fn sample_trace(&self) -> Result<RunTrace> {
        let horizon = *self.horizons.iter().max().ok_or(Error::EmptyStatistics)?;
        run_policy(
            &self.instance,
            &self.policies[0],
            horizon,
            &self.root_stream().replication(0),
        )
        .map_err(|e| e.in_scenario(&self.name))
    }
}

/// Result of one (policy, horizon) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub policy: PolicySpec,
    pub horizon: u64,
    pub report: RegretReport,
}

/// Per-replication summaries for one cell, in replication order.
pub fn replicate(
    instance: &BanditInstance,
    policy: &PolicySpec,
    horizon: u64,
    replications: u64,
    root: &RandomStream,
    engine: &Engine,
) -> Result<Vec<TraceSummary>> {
    engine.try_map(replications, |r| {
        let tr = run_policy(instance, policy, horizon, &root.replication(r))?;
        TraceSummary::new(&tr, instance.rho())
    })
}

/// Runs one cell and reduces it to a [`RegretAccumulator`].
pub fn run_cell(
    instance: &BanditInstance,
    policy: &PolicySpec,
    horizon: u64,
    replications: u64,
    root: &RandomStream,
    engine: &Engine,
) -> Result<RegretAccumulator> {
    let summaries = replicate(instance, policy, horizon, replications, root, engine)?;
    let mut acc = RegretAccumulator::new();
    for s in &summaries {
        acc.push(s, instance)?;
    }
    Ok(acc)
}

/// Runs every (policy, horizon) cell of a scenario. Cells come back in
/// policy-major, horizon-minor order.
pub fn run_scenario(scenario: &Scenario, engine: &Engine) -> Result<Vec<CellResult>> {
    scenario.validate()?;
    let root = scenario.root_stream();
    let mut out = Vec::with_capacity(scenario.policies.len() * scenario.horizons.len());
    for policy in &scenario.policies {
        for &horizon in &scenario.horizons {
            let report = run_cell(
                &scenario.instance,
                policy,
                horizon,
                scenario.replications,
                &root,
                engine,
            )
            .and_then(|acc| RegretReport::from_accumulator(policy, &scenario.instance, &acc))
            .map_err(|e| e.in_scenario(&scenario.name))?;
            out.push(CellResult {
                policy: policy.clone(),
                horizon,
                report,
            });
        }
    }
    Ok(out)
}

/// `(t, arm, reward)` rows of a trace with 1-based `t`, thinned to at most
/// `max_points` evenly strided rows.
pub fn downsample_trace(trace: &RunTrace, max_points: usize) -> Vec<(u64, usize, f64)> {
    let n = trace.rewards.len();
    let stride = n.div_ceil(max_points.max(1)).max(1);
    (0..n)
        .step_by(stride)
        .map(|i| (i as u64 + 1, trace.choices[i], trace.rewards[i]))
        .collect()
}

/// One scenario as written in a catalog file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub rho: f64,
    #[serde(default = "default_a")]
    pub a: f64,
    pub arms: Vec<DistributionSpec>,
    pub horizons: Vec<u64>,
    pub replications: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub trace: bool,
    #[serde(rename = "policy")]
    pub policies: Vec<PolicyConfig>,
}

fn default_a() -> f64 {
    DEFAULT_A
}

/// A catalog file: a list of `[[scenario]]` tables.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogConfig {
    #[serde(rename = "scenario", default)]
    pub scenarios: Vec<ScenarioConfig>,
}

impl ScenarioConfig {
    /// Builds the scenario. `seed_override` replaces the file's seed; with
    /// neither, the seed is 0.
    pub fn build(&self, seed_override: Option<u64>) -> Result<Scenario> {
        let ctx = |e: Error| e.in_scenario(&self.name);
        let instance = make_instance(self.arms.clone(), self.rho, self.a).map_err(ctx)?;
        let policies = self
            .policies
            .iter()
            .map(PolicySpec::try_from)
            .collect::<Result<Vec<_>>>()
            .map_err(ctx)?;
        let scenario = Scenario {
            name: self.name.clone(),
            instance,
            policies,
            horizons: self.horizons.clone(),
            replications: self.replications,
            seed: seed_override.or(self.seed).unwrap_or(0),
            emit_trace: self.trace,
        };
        scenario.validate()?;
        Ok(scenario)
    }
}

impl From<&Scenario> for ScenarioConfig {
    fn from(s: &Scenario) -> Self {
        ScenarioConfig {
            name: s.name.clone(),
            rho: s.instance.rho(),
            a: s.instance.a(),
            arms: s.instance.arms().to_vec(),
            horizons: s.horizons.clone(),
            replications: s.replications,
            seed: Some(s.seed),
            trace: s.emit_trace,
            policies: s.policies.iter().map(PolicyConfig::from).collect(),
        }
    }
}

impl CatalogConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("catalog serializes")
    }

    pub fn from_scenarios(scenarios: &[Scenario]) -> Self {
        CatalogConfig {
            scenarios: scenarios.iter().map(ScenarioConfig::from).collect(),
        }
    }

    pub fn build(&self, seed_override: Option<u64>) -> Result<Vec<Scenario>> {
        if self.scenarios.is_empty() {
            return Err(Error::Config(
                "catalog lists no `[[scenario]]` tables".into(),
            ));
        }
        let mut names = std::collections::BTreeSet::new();
        for s in &self.scenarios {
            if !names.insert(s.name.as_str()) {
                return Err(Error::Config(format!(
                    "duplicate scenario name `{}`",
                    s.name
                )));
            }
        }
        self.scenarios
            .iter()
            .map(|s| s.build(seed_override))
            .collect()
    }
}
