//! Regret functionals: cumulative mean-variance of a reward path, the
//! single-arm benchmark, proxy regret and its closed-form decomposition.
//!
//! For a policy that plays arm `i` a total of `τ_i` times with sample means
//! `μ̄_i`, the proxy regret against always playing the optimal arm is
//!
//! ```text
//! Σ E[τ_i]Δ_i + Σ E[τ_i]Γ_{i,*}² − (1/T)·E[(Σ τ_i(μ̄_i − μ_*))²] + σ_*²
//! ```
//!
//! Both this decomposition and the direct path estimate are computed from
//! the same replications so they can be checked against each other.

pub mod bounds;

pub use bounds::{
    kl_divergence, suboptimal_pull_bound, thm1_gap, thm2_lower_bound, thm3_upper_bound, DEFAULT_C1,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::StreamingMoments;
use crate::instance::BanditInstance;
use crate::policies::{PolicySpec, RunTrace};
use crate::stats::Estimate;

/// `Σ_t (x_t − x̄)² − ρ·Σ_t x_t` over one reward path.
pub fn path_cumulative_mv_of(rewards: &[f64], rho: f64) -> Result<f64> {
    if rewards.is_empty() {
        return Err(Error::HorizonTooShort {
            horizon: 0,
            reason: "empty reward path".into(),
        });
    }
    let sum: f64 = rewards.iter().sum();
    let mean = sum / rewards.len() as f64;
    let ss: f64 = rewards.iter().map(|x| (x - mean) * (x - mean)).sum();
    Ok(ss - rho * sum)
}

pub fn path_cumulative_mv(trace: &RunTrace, rho: f64) -> Result<f64> {
    path_cumulative_mv_of(&trace.rewards, rho)
}

/// Expected cumulative mean-variance of always playing the optimal arm:
/// `T·ξ_* − σ_*²`.
pub fn single_arm_benchmark(instance: &BanditInstance, horizon: u64) -> Result<f64> {
    if horizon == 0 {
        return Err(Error::HorizonTooShort {
            horizon,
            reason: "benchmark needs T ≥ 1".into(),
        });
    }
    let star = instance.star();
    Ok(horizon as f64 * instance.xi()[star] - instance.variance(star))
}

/// The parts of a [`RunTrace`] regret estimation needs.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSummary {
    pub horizon: u64,
    pub path_mv: f64,
    pub pulls: Vec<u64>,
    /// Sample mean per arm; 0 for arms never played (they carry zero weight).
    pub means: Vec<f64>,
}

impl TraceSummary {
    pub fn new(trace: &RunTrace, rho: f64) -> Result<Self> {
        Ok(TraceSummary {
            horizon: trace.horizon,
            path_mv: path_cumulative_mv(trace, rho)?,
            pulls: trace.per_arm.iter().map(|m| m.count()).collect(),
            means: trace
                .per_arm
                .iter()
                .map(|m| m.mean().unwrap_or(0.0))
                .collect(),
        })
    }

    /// Per-trace values of `(Σ τ_iΔ_i, Σ τ_iΓ_{i,*}², (1/T)(Σ τ_i(μ̄_i − μ_*))²)`.
    pub fn closed_form_terms(&self, instance: &BanditInstance) -> (f64, f64, f64) {
        let mu_star = instance.mean(instance.star());
        let mut delta = 0.0;
        let mut gamma = 0.0;
        let mut weighted = 0.0;
        for i in 0..self.pulls.len() {
            let tau = self.pulls[i] as f64;
            delta += tau * instance.gaps()[i];
            gamma += tau * instance.mean_gaps()[i].powi(2);
            weighted += tau * (self.means[i] - mu_star);
        }
        (delta, gamma, weighted * weighted / self.horizon as f64)
    }
}

/// Monte Carlo estimates of each term of the closed-form proxy regret.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub term_delta: Estimate,
    pub term_gamma: Estimate,
    pub term_cross: Estimate,
    /// `σ_*²`, exact.
    pub term_sigma: Estimate,
    /// `term_delta + term_gamma − term_cross + term_sigma`; the standard error
    /// is that of the per-replication totals.
    pub total: Estimate,
}

/// Mergeable accumulator of per-replication regret quantities.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RegretAccumulator {
    horizon: Option<u64>,
    path_mv: StreamingMoments,
    term_delta: StreamingMoments,
    term_gamma: StreamingMoments,
    term_cross: StreamingMoments,
    closed_total: StreamingMoments,
}

impl RegretAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    fn check_horizon(&mut self, horizon: u64) -> Result<()> {
        match self.horizon {
            None => {
                self.horizon = Some(horizon);
                Ok(())
            }
            Some(h) if h == horizon => Ok(()),
            Some(h) => Err(Error::HeterogeneousHorizons {
                first: h,
                other: horizon,
            }),
        }
    }

    pub fn push(&mut self, summary: &TraceSummary, instance: &BanditInstance) -> Result<()> {
        self.check_horizon(summary.horizon)?;
        let (d, g, c) = summary.closed_form_terms(instance);
        self.path_mv.push(summary.path_mv);
        self.term_delta.push(d);
        self.term_gamma.push(g);
        self.term_cross.push(c);
        self.closed_total.push(d + g - c);
        Ok(())
    }

    pub fn merge(&self, other: &RegretAccumulator) -> Result<RegretAccumulator> {
        let horizon = match (self.horizon, other.horizon) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::HeterogeneousHorizons { first: a, other: b })
            }
            (a, b) => a.or(b),
        };
        Ok(RegretAccumulator {
            horizon,
            path_mv: self.path_mv.merge(&other.path_mv),
            term_delta: self.term_delta.merge(&other.term_delta),
            term_gamma: self.term_gamma.merge(&other.term_gamma),
            term_cross: self.term_cross.merge(&other.term_cross),
            closed_total: self.closed_total.merge(&other.closed_total),
        })
    }

    pub fn replications(&self) -> u64 {
        self.path_mv.count()
    }

    fn require_horizon(&self) -> Result<u64> {
        self.horizon.ok_or(Error::EmptyStatistics)
    }

    /// Monte Carlo estimate of the cumulative mean-variance of the policy.
    pub fn empirical_xi(&self) -> Result<Estimate> {
        self.require_horizon()?;
        Ok(Estimate::from_moments(&self.path_mv))
    }

    pub fn proxy_regret_empirical(&self, instance: &BanditInstance) -> Result<Estimate> {
        let bench = single_arm_benchmark(instance, self.require_horizon()?)?;
        let xi = Estimate::from_moments(&self.path_mv);
        Ok(Estimate {
            mean: xi.mean - bench,
            ..xi
        })
    }

    pub fn decomposition(&self, instance: &BanditInstance) -> Result<Decomposition> {
        self.require_horizon()?;
        let term_delta = Estimate::from_moments(&self.term_delta);
        let term_gamma = Estimate::from_moments(&self.term_gamma);
        let term_cross = Estimate::from_moments(&self.term_cross);
        let term_sigma = Estimate::exact(instance.variance(instance.star()));
        let totals = Estimate::from_moments(&self.closed_total);
        Ok(Decomposition {
            term_delta,
            term_gamma,
            term_cross,
            term_sigma,
            total: Estimate {
                mean: term_delta.mean + term_gamma.mean - term_cross.mean + term_sigma.mean,
                ..totals
            },
        })
    }
}

fn accumulate(traces: &[RunTrace], instance: &BanditInstance) -> Result<RegretAccumulator> {
    if traces.is_empty() {
        return Err(Error::EmptyStatistics);
    }
    let mut acc = RegretAccumulator::new();
    for tr in traces {
        acc.push(&TraceSummary::new(tr, instance.rho())?, instance)?;
    }
    Ok(acc)
}

/// Mean over traces of the path functional minus the single-arm benchmark.
pub fn proxy_regret_empirical(traces: &[RunTrace], instance: &BanditInstance) -> Result<Estimate> {
    accumulate(traces, instance)?.proxy_regret_empirical(instance)
}

/// Term-by-term Monte Carlo estimate of the closed-form proxy regret.
pub fn proxy_regret_closed_form(
    traces: &[RunTrace],
    instance: &BanditInstance,
) -> Result<Decomposition> {
    accumulate(traces, instance)?.decomposition(instance)
}

/// Theoretical reference values attached to a report. `None` where the
/// bound does not apply to the instance or policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValues {
    pub thm3_upper: Option<f64>,
    pub thm2_lower: Option<f64>,
    pub thm1_gap: f64,
}

impl BoundValues {
    pub fn compute(instance: &BanditInstance, policy: &PolicySpec, horizon: u64) -> Result<Self> {
        let thm3_upper = policy
            .resolved_b(instance)
            .and_then(|b| thm3_upper_bound(instance, b, horizon).ok());
        Ok(BoundValues {
            thm3_upper,
            thm2_lower: thm2_lower_bound(instance, DEFAULT_C1, horizon).ok(),
            thm1_gap: thm1_gap(instance, horizon)?,
        })
    }
}

/// Regret summary of one (policy, horizon) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretReport {
    pub policy: String,
    pub horizon: u64,
    pub replications: u64,
    pub empirical_xi: Estimate,
    pub benchmark_xi_single_arm: f64,
    pub proxy_regret_empirical: Estimate,
    pub decomposition: Decomposition,
    pub bounds: BoundValues,
}

impl RegretReport {
    pub fn from_accumulator(
        policy: &PolicySpec,
        instance: &BanditInstance,
        acc: &RegretAccumulator,
    ) -> Result<Self> {
        let horizon = acc.require_horizon()?;
        Ok(RegretReport {
            policy: policy.label(),
            horizon,
            replications: acc.replications(),
            empirical_xi: acc.empirical_xi()?,
            benchmark_xi_single_arm: single_arm_benchmark(instance, horizon)?,
            proxy_regret_empirical: acc.proxy_regret_empirical(instance)?,
            decomposition: acc.decomposition(instance)?,
            bounds: BoundValues::compute(instance, policy, horizon)?,
        })
    }

    pub fn from_traces(
        policy: &PolicySpec,
        instance: &BanditInstance,
        traces: &[RunTrace],
    ) -> Result<Self> {
        Self::from_accumulator(policy, instance, &accumulate(traces, instance)?)
    }

    pub fn proxy_regret_closed_form(&self) -> Estimate {
        self.decomposition.total
    }

    /// Whether any standard error is undefined (fewer than two replications).
    pub fn se_undefined(&self) -> bool {
        !self.empirical_xi.has_se()
    }

    /// Certified enclosure `[R̂, R̂ + gap]` for the regret against the
    /// known-model optimal policy, using the point estimate of `R̂`.
    pub fn regret_enclosure(&self) -> (f64, f64) {
        let r = self.proxy_regret_empirical.mean;
        (r, r + self.bounds.thm1_gap)
    }
}
