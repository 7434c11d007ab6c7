//! Sequential arm-selection policies and the single-run simulator.

mod spec;

pub use spec::{default_b, DseeMode, GrowthSchedule, PolicyConfig, PolicySpec, DEFAULT_RN_UCB_C};

use crate::distribution::DistributionSpec;
use crate::error::{Error, Result};
use crate::estimators::StreamingMoments;
use crate::instance::BanditInstance;
use crate::stream::RandomStream;

/// One realized horizon of a policy.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub horizon: u64,
    /// Arm played at each step, 0-based.
    pub choices: Vec<usize>,
    pub rewards: Vec<f64>,
    /// Final per-arm statistics: `τ_i(T)`, `μ̄_i(T)`, `σ̄²_i(T)`.
    pub per_arm: Vec<StreamingMoments>,
}

impl RunTrace {
    pub fn pulls(&self, arm: usize) -> u64 {
        self.per_arm[arm].count()
    }

    /// Rebuilds per-arm statistics from `(choices, rewards)`.
    pub fn recompute_per_arm(&self) -> Vec<StreamingMoments> {
        let mut out = vec![StreamingMoments::new(); self.per_arm.len()];
        for (&arm, &x) in self.choices.iter().zip(&self.rewards) {
            out[arm].push(x);
        }
        out
    }
}

/// MV-UCB index `ξ̄ − b·sqrt(ln t / τ)`.
pub fn mv_ucb_index(stats: &StreamingMoments, rho: f64, b: f64, t: u64) -> Result<f64> {
    if t == 0 {
        return Err(Error::invalid("t", "time starts at 1"));
    }
    let xi = stats
        .sample_mean_variance(rho)
        .ok_or(Error::EmptyStatistics)?;
    Ok(mv_ucb_index_unchecked(xi, stats.count(), b, t))
}

#[inline]
fn mv_ucb_index_unchecked(xi_bar: f64, pulls: u64, b: f64, t: u64) -> f64 {
    if b == 0.0 {
        return xi_bar;
    }
    xi_bar - b * ((t as f64).ln() / pulls as f64).sqrt()
}

/// Whether MV-DSEE explores or exploits at a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DseePhase {
    Explore(usize),
    Exploit,
}

/// Number of exploration slots allowed by time `t`.
///
/// Floored at `num_arms` so that every arm is sampled once before any
/// exploitation step.
pub fn exploration_budget(t: u64, mode: DseeMode, num_arms: usize) -> u64 {
    let tf = t as f64;
    let raw = match mode {
        DseeMode::ModelSpecific { schedule } => (schedule.eval(t) * tf.ln()).ceil(),
        DseeMode::ModelIndependent { w } => (w * tf.powf(2.0 / 3.0)).ceil(),
    };
    (raw as u64).max(num_arms as u64)
}

/// Decides the MV-DSEE phase at time `t` given how many exploration slots
/// were already used. Exploration visits arms round robin.
pub fn dsee_phase(t: u64, explored_so_far: u64, mode: DseeMode, num_arms: usize) -> DseePhase {
    if explored_so_far < exploration_budget(t, mode, num_arms) {
        DseePhase::Explore((explored_so_far % num_arms as u64) as usize)
    } else {
        DseePhase::Exploit
    }
}

/// Known-model two-step counterexample policy (0-based arms).
pub fn counterexample_policy_step(
    t: u64,
    first_reward: Option<f64>,
    threshold: f64,
) -> Result<usize> {
    match (t, first_reward) {
        (1, _) => Ok(0),
        (2, Some(x)) => Ok(if x < threshold { 0 } else { 1 }),
        (2, None) => Err(Error::invalid("first_reward", "required at t = 2")),
        _ => Err(Error::HorizonTooShort {
            horizon: t,
            reason: "the counterexample policy is defined only for t ∈ {1, 2}".into(),
        }),
    }
}

fn argmin_by<F: FnMut(usize) -> f64>(n: usize, mut key: F) -> usize {
    let mut best = 0;
    let mut best_val = key(0);
    for i in 1..n {
        let v = key(i);
        if v < best_val {
            best = i;
            best_val = v;
        }
    }
    best
}

/// Simulates `policy` on `instance` for `horizon` steps.
///
/// Arm `i` draws from `stream.arm(i)`, so the k-th pull of an arm yields the
/// same reward under every policy run from the same stream.
pub fn run_policy(
    instance: &BanditInstance,
    policy: &PolicySpec,
    horizon: u64,
    stream: &RandomStream,
) -> Result<RunTrace> {
    let k = instance.num_arms();
    policy.validate(k)?;
    if horizon == 0 {
        return Err(Error::HorizonTooShort {
            horizon,
            reason: "horizon must be at least 1".into(),
        });
    }
    match policy {
        PolicySpec::MvUcb { .. } | PolicySpec::RiskNeutralUcb { .. } if horizon < k as u64 => {
            return Err(Error::HorizonTooShort {
                horizon,
                reason: format!("index policies need T ≥ K = {k} for initialization"),
            });
        }
        PolicySpec::CounterexampleThreshold { .. } if horizon != 2 => {
            return Err(Error::HorizonTooShort {
                horizon,
                reason: "the counterexample policy is defined only for T = 2".into(),
            });
        }
        _ => {}
    }

    let arms: &[DistributionSpec] = instance.arms();
    let rho = instance.rho();
    let mut streams: Vec<RandomStream> = (0..k).map(|i| stream.arm(i)).collect();
    let mut stats = vec![StreamingMoments::new(); k];
    let mut choices = Vec::with_capacity(horizon as usize);
    let mut rewards = Vec::with_capacity(horizon as usize);
    let b = policy.resolved_b(instance);
    let mut explored: u64 = 0;

    for t in 1..=horizon {
        let arm = match *policy {
            PolicySpec::MvUcb { .. } => {
                if t <= k as u64 {
                    (t - 1) as usize
                } else {
                    let b = b.unwrap_or_default();
                    argmin_by(k, |i| {
                        let s = &stats[i];
                        let xi =
                            s.variance().unwrap_or_default() - rho * s.mean().unwrap_or_default();
                        mv_ucb_index_unchecked(xi, s.count(), b, t)
                    })
                }
            }
            PolicySpec::RiskNeutralUcb { c } => {
                if t <= k as u64 {
                    (t - 1) as usize
                } else {
                    let bonus =
                        |s: &StreamingMoments| c * ((t as f64).ln() / s.count() as f64).sqrt();
                    argmin_by(k, |i| {
                        -(stats[i].mean().unwrap_or_default() + bonus(&stats[i]))
                    })
                }
            }
            PolicySpec::MvDsee { mode } => match dsee_phase(t, explored, mode, k) {
                DseePhase::Explore(arm) => {
                    explored += 1;
                    arm
                }
                DseePhase::Exploit => argmin_by(k, |i| {
                    stats[i].sample_mean_variance(rho).unwrap_or(f64::INFINITY)
                }),
            },
            PolicySpec::SingleArm { arm } => arm,
            PolicySpec::CounterexampleThreshold { threshold } => {
                counterexample_policy_step(t, rewards.first().copied(), threshold)?
            }
        };
        let x = arms[arm].sample(&mut streams[arm]);
        stats[arm].push(x);
        choices.push(arm);
        rewards.push(x);
    }

    Ok(RunTrace {
        horizon,
        choices,
        rewards,
        per_arm: stats,
    })
}
