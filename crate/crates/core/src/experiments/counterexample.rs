//! The two-step counterexample: an adaptive policy that knows the model beats
//! the best single arm, so the single-arm benchmark is not the optimum.

use serde::{Deserialize, Serialize};

use crate::distribution::DistributionSpec;
use crate::error::{Error, Result};
use crate::estimators::{StreamingMoments, SE_MULTIPLIER};
use crate::experiments::figures::counterexample_instance;
use crate::experiments::Engine;
use crate::instance::BanditInstance;
use crate::policies::{run_policy, PolicySpec};
use crate::regret::single_arm_benchmark;
use crate::stats::Estimate;
use crate::stream::RandomStream;

pub const MIN_COUNTEREXAMPLE_REPLICATIONS: u64 = 100_000;
pub const DEFAULT_COUNTEREXAMPLE_REPLICATIONS: u64 = 1_000_000;
pub const DEFAULT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub threshold: f64,
    pub replications: u64,
    pub xi_single_arm: f64,
    pub xi_threshold: Estimate,
    pub confirmed: bool,
}

/// Cumulative mean-variance of a two-step path.
pub fn two_step_mv(x1: f64, x2: f64, rho: f64) -> f64 {
    (x1 - x2).powi(2) / 2.0 - rho * (x1 + x2)
}

/// Monte Carlo value of the threshold policy against the analytic single-arm
/// benchmark.
pub fn counterexample_experiment(
    replications: u64,
    seed: u64,
    threshold: f64,
    engine: &Engine,
) -> Result<CounterexampleReport> {
    if replications < MIN_COUNTEREXAMPLE_REPLICATIONS {
        return Err(Error::invalid(
            "replications",
            format!("need at least {MIN_COUNTEREXAMPLE_REPLICATIONS}, got {replications}"),
        ));
    }
    if threshold.is_nan() {
        return Err(Error::invalid("threshold", "must not be NaN"));
    }
    let instance = counterexample_instance();
    let policy = PolicySpec::CounterexampleThreshold { threshold };
    let root = RandomStream::new(seed);
    let rho = instance.rho();
    let values = engine.try_map(replications, |r| {
        let tr = run_policy(&instance, &policy, 2, &root.replication(r))?;
        Ok(two_step_mv(tr.rewards[0], tr.rewards[1], rho))
    })?;
    let moments: StreamingMoments = values.into_iter().collect();
    let xi_threshold = Estimate::from_moments(&moments);
    let xi_single_arm = single_arm_benchmark(&instance, 2)?;
    Ok(CounterexampleReport {
        threshold,
        replications,
        xi_single_arm,
        xi_threshold,
        confirmed: xi_threshold.upper(SE_MULTIPLIER) < xi_single_arm,
    })
}

const QUADRATURE_INTERVALS: usize = 20_000;
const QUADRATURE_HALF_WIDTH: f64 = 10.0;

/// `E[h(X)]` for `X ~ dist`: exact for Bernoulli, composite Simpson over
/// `±10σ` for Gaussian.
fn expectation(dist: &DistributionSpec, h: impl Fn(f64) -> f64) -> f64 {
    match *dist {
        DistributionSpec::Bernoulli { p } => p * h(1.0) + (1.0 - p) * h(0.0),
        DistributionSpec::Gaussian { mean, variance } => {
            let sd = variance.sqrt();
            let n = QUADRATURE_INTERVALS;
            let step = 2.0 * QUADRATURE_HALF_WIDTH / n as f64;
            let norm = (2.0 * std::f64::consts::PI).sqrt();
            let f = |z: f64| (-0.5 * z * z).exp() / norm * h(mean + sd * z);
            let mut acc = f(-QUADRATURE_HALF_WIDTH) + f(QUADRATURE_HALF_WIDTH);
            for i in 1..n {
                let z = -QUADRATURE_HALF_WIDTH + i as f64 * step;
                acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(z);
            }
            acc * step / 3.0
        }
    }
}

/// Value of the known-model optimal policy at horizon 2: pick the first arm,
/// observe `x₁`, then pick the arm minimising the conditional expected path
/// functional.
pub fn optimal_two_step_value(instance: &BanditInstance) -> Result<f64> {
    let rho = instance.rho();
    let cond = |x: f64| {
        (0..instance.num_arms())
            .map(|j| {
                let (m, v) = (instance.mean(j), instance.variance(j));
                ((x - m).powi(2) + v) / 2.0 - rho * (x + m)
            })
            .fold(f64::INFINITY, f64::min)
    };
    instance
        .arms()
        .iter()
        .map(|d| expectation(d, cond))
        .reduce(f64::min)
        .ok_or(Error::EmptyStatistics)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_moments() {
        let d = DistributionSpec::gaussian(0.3, 2.0).unwrap();
        assert!((expectation(&d, |_| 1.0) - 1.0).abs() < 1e-12);
        assert!((expectation(&d, |x| x) - 0.3).abs() < 1e-12);
        assert!((expectation(&d, |x| (x - 0.3).powi(2)) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn optimum_beats_single_arm() {
        let inst = counterexample_instance();
        let v = optimal_two_step_value(&inst).unwrap();
        assert!(v < single_arm_benchmark(&inst, 2).unwrap());
    }

    #[test]
    fn too_few_replications() {
        let e = counterexample_experiment(10, 0, 0.5, &Engine::sequential()).unwrap_err();
        assert!(e.is_infeasible());
    }

    #[test]
    fn identity_matches_path_functional() {
        let v = crate::regret::path_cumulative_mv_of(&[0.2, 1.7], 1.0).unwrap();
        assert!((v - two_step_mv(0.2, 1.7, 1.0)).abs() < 1e-15);
    }
}
