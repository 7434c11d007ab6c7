//! Built-in scenarios: the volatility comparison, the gap sweep and the
//! two-step counterexample.

use crate::distribution::DistributionSpec;
use crate::error::{Error, Result};
use crate::experiments::scenario::Scenario;
use crate::experiments::Engine;
use crate::instance::{make_instance, BanditInstance, DEFAULT_A};
use crate::policies::{run_policy, PolicySpec};
use crate::stats::median;

pub const FIG1_HORIZON: u64 = 10_000;
pub const FIG1_REPLICATIONS: u64 = 100;
pub const FIG2_HORIZONS: [u64; 3] = [100, 1_000, 10_000];
pub const FIG2_REPLICATIONS: u64 = 1_000;
pub const FIG2_DELTAS: [f64; 3] = [0.1, 0.25, 0.4];

/// Four Gaussian arms with means `0..3` and variances `1, 1, 4, 4`.
pub fn fig1_instance(rho: f64) -> Result<BanditInstance> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::invalid(
            "rho",
            format!("must be positive and finite, got {rho}"),
        ));
    }
    let arms = [(0.0, 1.0), (1.0, 1.0), (2.0, 4.0), (3.0, 4.0)]
        .iter()
        .map(|&(m, v)| DistributionSpec::gaussian(m, v))
        .collect::<Result<Vec<_>>>()?;
    make_instance(arms, rho, DEFAULT_A)
}

pub fn fig1_scenario(rho: f64) -> Result<Scenario> {
    Ok(Scenario {
        name: format!("fig1_rho{rho}"),
        instance: fig1_instance(rho)?,
        policies: vec![PolicySpec::mv_ucb()],
        horizons: vec![FIG1_HORIZON],
        replications: FIG1_REPLICATIONS,
        seed: 1,
        emit_trace: true,
    })
}

/// Per-replication sample variance of the MV-UCB reward path.
pub fn fig1_path_variances(
    rho: f64,
    horizon: u64,
    replications: u64,
    seed: u64,
    engine: &Engine,
) -> Result<Vec<f64>> {
    let mut s = fig1_scenario(rho)?;
    s.seed = seed;
    let root = s.root_stream();
    engine.try_map(replications, |r| {
        let tr = run_policy(&s.instance, &s.policies[0], horizon, &root.replication(r))?;
        crate::estimators::StreamingMoments::from_slice(&tr.rewards)
            .variance()
            .ok_or(Error::EmptyStatistics)
    })
}

/// Median per-path variance, see [`fig1_path_variances`].
pub fn fig1_median_path_variance(
    rho: f64,
    horizon: u64,
    replications: u64,
    seed: u64,
    engine: &Engine,
) -> Result<f64> {
    median(&fig1_path_variances(
        rho,
        horizon,
        replications,
        seed,
        engine,
    )?)
    .ok_or(Error::EmptyStatistics)
}

/// Two Gaussian arms `N(0, 1/2 − Δ)` and `N(1/2, 1)` at `ρ = 1`, so that the
/// mean-variance gap is exactly `Δ`.
pub fn fig2_instance(delta: f64) -> Result<BanditInstance> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::invalid(
            "delta",
            format!("must lie in (0, 0.5), got {delta}"),
        ));
    }
    make_instance(
        vec![
            DistributionSpec::gaussian(0.0, 0.5 - delta)?,
            DistributionSpec::gaussian(0.5, 1.0)?,
        ],
        1.0,
        DEFAULT_A,
    )
}

pub fn fig2_scenario(delta: f64) -> Result<Scenario> {
    Ok(Scenario {
        name: format!("fig2_delta{delta}"),
        instance: fig2_instance(delta)?,
        policies: vec![PolicySpec::mv_ucb()],
        horizons: FIG2_HORIZONS.to_vec(),
        replications: FIG2_REPLICATIONS,
        seed: 2,
        emit_trace: false,
    })
}

pub fn fig2_scenarios(deltas: &[f64]) -> Result<Vec<Scenario>> {
    deltas.iter().map(|&d| fig2_scenario(d)).collect()
}

/// `N(0, 1)` against `N(1, 2.1)` at `ρ = 1`, horizon 2.
pub fn counterexample_instance() -> BanditInstance {
    make_instance(
        vec![
            DistributionSpec::gaussian(0.0, 1.0).expect("valid"),
            DistributionSpec::gaussian(1.0, 2.1).expect("valid"),
        ],
        1.0,
        DEFAULT_A,
    )
    .expect("valid instance")
}

pub fn counterexample_scenario(threshold: f64) -> Scenario {
    Scenario {
        name: "counterexample".into(),
        instance: counterexample_instance(),
        policies: vec![
            PolicySpec::CounterexampleThreshold { threshold },
            PolicySpec::SingleArm { arm: 0 },
        ],
        horizons: vec![2],
        replications: 100_000,
        seed: 3,
        emit_trace: false,
    }
}

/// Every built-in scenario.
pub fn default_catalog() -> Vec<Scenario> {
    let mut out = vec![
        fig1_scenario(1.0).expect("valid"),
        fig1_scenario(5.0).expect("valid"),
    ];
    out.extend(fig2_scenarios(&FIG2_DELTAS).expect("valid"));
    out.push(counterexample_scenario(0.5));
    out
}
