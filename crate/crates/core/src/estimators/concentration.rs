//! Monte Carlo checks of the concentration inequalities the regret analysis
//! rests on: tail bounds for the sample mean-variance, the stopping-time
//! inequality `E[τ(μ̄ − μ)²] ≤ (ln T + 2)/a`, and the MV-UCB bound on
//! suboptimal pulls.
//!
//! The inequalities bound true probabilities and expectations; we only see
//! empirical frequencies, so a check fails only when the estimate exceeds the
//! bound by more than [`SE_MULTIPLIER`] standard errors.

use serde::{Deserialize, Serialize};

use crate::distribution::DistributionSpec;
use crate::error::{Error, Result};
use crate::estimators::StreamingMoments;
use crate::experiments::Engine;
use crate::instance::BanditInstance;
use crate::policies::{run_policy, PolicySpec};
use crate::regret::suboptimal_pull_bound;
use crate::stats::Estimate;
use crate::stream::RandomStream;

pub const SE_MULTIPLIER: f64 = 3.0;

/// Fewer replications than this cannot resolve the tail probabilities.
pub const MIN_TAIL_REPLICATIONS: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailSide {
    /// `P[ξ̄_s − ξ > δ]`.
    Upper,
    /// `P[ξ̄_s − ξ < −δ]`.
    Lower,
}

impl TailSide {
    pub fn as_str(self) -> &'static str {
        match self {
            TailSide::Upper => "upper",
            TailSide::Lower => "lower",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Satisfied,
    Violated,
    /// Lower tail with `δ > 2 + ρ`, outside the inequality's range.
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Satisfied => "false",
            Verdict::Violated => "true",
            Verdict::NotApplicable => "n/a",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "false" => Some(Verdict::Satisfied),
            "true" => Some(Verdict::Violated),
            "n/a" => Some(Verdict::NotApplicable),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCell {
    pub s: u64,
    pub delta: f64,
    pub side: TailSide,
    pub empirical: f64,
    pub bound: f64,
    /// Binomial standard error of `empirical`, `sqrt(p̂(1 − p̂)/n)`.
    pub std_err: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailCheckReport {
    pub dist: DistributionSpec,
    pub rho: f64,
    pub a: f64,
    pub replications: u64,
    pub cells: Vec<TailCell>,
}

impl TailCheckReport {
    pub fn violations(&self) -> impl Iterator<Item = &TailCell> {
        self.cells.iter().filter(|c| c.verdict == Verdict::Violated)
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// Right-hand side of the sample mean-variance tail inequality:
/// `2·exp(−a·s·δ²/(1+ρ)²)` for the upper tail, `2·exp(−a·s·δ²/(2+ρ)²)` for
/// the lower tail.
pub fn mv_tail_bound(side: TailSide, s: u64, delta: f64, rho: f64, a: f64) -> f64 {
    let scale = match side {
        TailSide::Upper => 1.0 + rho,
        TailSide::Lower => 2.0 + rho,
    };
    2.0 * (-a * s as f64 * delta * delta / (scale * scale)).exp()
}

/// Estimates both tails of `ξ̄_s − ξ` for every `(s, δ)` cell and compares
/// them against [`mv_tail_bound`].
///
/// Each replication draws one sample path of length `max s` from
/// `stream.replication(r)` and reads `ξ̄_s` off its prefixes.
pub fn verify_mv_concentration(
    dist: &DistributionSpec,
    rho: f64,
    a: f64,
    grid: &[(u64, f64)],
    replications: u64,
    stream: &RandomStream,
    engine: &Engine,
) -> Result<TailCheckReport> {
    dist.validate()?;
    if replications < MIN_TAIL_REPLICATIONS {
        return Err(Error::invalid(
            "replications",
            format!("tail checks need at least {MIN_TAIL_REPLICATIONS}, got {replications}"),
        ));
    }
    if grid.is_empty() {
        return Err(Error::Config("empty (s, delta) grid".into()));
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::invalid("a", format!("must be positive, got {a}")));
    }
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::invalid(
            "rho",
            format!("must be nonnegative, got {rho}"),
        ));
    }
    for &(s, delta) in grid {
        if s == 0 {
            return Err(Error::invalid("s", "sample counts must be positive"));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::invalid(
                "delta",
                format!("must be positive, got {delta}"),
            ));
        }
    }

    let mut sizes: Vec<u64> = grid.iter().map(|&(s, _)| s).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let max_s = *sizes.last().expect("non-empty grid");
    let xi = dist.true_mean_variance(rho);

    let paths: Vec<Vec<f64>> = engine.map(replications, |r| {
        let mut st = stream.replication(r);
        let mut m = StreamingMoments::new();
        let mut out = Vec::with_capacity(sizes.len());
        let mut next = 0;
        for n in 1..=max_s {
            m.push(dist.sample(&mut st));
            if n == sizes[next] {
                out.push(m.sample_mean_variance(rho).expect("non-empty") - xi);
                next += 1;
            }
        }
        out
    });

    let n = replications as f64;
    let mut cells = Vec::with_capacity(grid.len() * 2);
    for &(s, delta) in grid {
        let col = sizes.binary_search(&s).expect("size present");
        for side in [TailSide::Upper, TailSide::Lower] {
            let hits = paths
                .iter()
                .filter(|p| match side {
                    TailSide::Upper => p[col] > delta,
                    TailSide::Lower => p[col] < -delta,
                })
                .count();
            let empirical = hits as f64 / n;
            let std_err = (empirical * (1.0 - empirical) / n).sqrt();
            let bound = mv_tail_bound(side, s, delta, rho, a);
            let verdict = if side == TailSide::Lower && delta > 2.0 + rho {
                Verdict::NotApplicable
            } else if empirical > bound + SE_MULTIPLIER * std_err {
                Verdict::Violated
            } else {
                Verdict::Satisfied
            };
            cells.push(TailCell {
                s,
                delta,
                side,
                empirical,
                bound,
                std_err,
                verdict,
            });
        }
    }

    Ok(TailCheckReport {
        dist: *dist,
        rho,
        a,
        replications,
        cells,
    })
}

/// `(ln T + 2)/a`.
pub fn stopping_time_rhs(horizon: u64, a: f64) -> f64 {
    ((horizon as f64).ln() + 2.0) / a
}

fn within(est: &Estimate, limit: f64) -> bool {
    let se = if est.se.is_finite() { est.se } else { 0.0 };
    est.mean <= limit + SE_MULTIPLIER * se
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingTimeCheck {
    pub arm: usize,
    /// Monte Carlo estimate of `E[τ_i(μ̄_i − μ_i)²]`.
    pub lhs: Estimate,
    pub rhs: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PullCheck {
    pub arm: usize,
    /// Monte Carlo estimate of `E[τ_i(T)]`.
    pub pulls: Estimate,
    pub bound: f64,
    pub satisfied: bool,
}

/// Stopping-time and suboptimal-pull checks from one set of policy runs.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyBoundReport {
    pub policy: String,
    pub horizon: u64,
    pub replications: u64,
    pub stopping: Vec<StoppingTimeCheck>,
    /// Filled for MV-UCB only, one entry per arm with `Δ_i > 0`.
    pub pulls: Vec<PullCheck>,
}

impl PolicyBoundReport {
    pub fn is_clean(&self) -> bool {
        self.stopping.iter().all(|c| c.satisfied) && self.pulls.iter().all(|c| c.satisfied)
    }
}

pub fn check_policy_bounds(
    instance: &BanditInstance,
    policy: &PolicySpec,
    horizon: u64,
    replications: u64,
    stream: &RandomStream,
    engine: &Engine,
) -> Result<PolicyBoundReport> {
    if horizon < 2 {
        return Err(Error::HorizonTooShort {
            horizon,
            reason: "the stopping-time check needs T ≥ 2".into(),
        });
    }
    if replications == 0 {
        return Err(Error::invalid("replications", "must be positive"));
    }
    let k = instance.num_arms();
    let per_rep: Vec<Vec<(f64, u64)>> = engine.try_map(replications, |r| {
        let tr = run_policy(instance, policy, horizon, &stream.replication(r))?;
        Ok((0..k)
            .map(|i| {
                let m = &tr.per_arm[i];
                let dev = m.mean().map_or(0.0, |mu| mu - instance.mean(i));
                (m.count() as f64 * dev * dev, m.count())
            })
            .collect())
    })?;

    let rhs = stopping_time_rhs(horizon, instance.a());
    let stopping = (0..k)
        .map(|i| {
            let lhs = Estimate::from_samples(per_rep.iter().map(|v| v[i].0));
            StoppingTimeCheck {
                arm: i,
                lhs,
                rhs,
                satisfied: within(&lhs, rhs),
            }
        })
        .collect();

    let mut pulls = Vec::new();
    if let Some(b) = policy.resolved_b(instance) {
        for i in instance.suboptimal() {
            let Ok(bound) = suboptimal_pull_bound(instance, b, horizon, i) else {
                continue;
            };
            let est = Estimate::from_samples(per_rep.iter().map(|v| v[i].1 as f64));
            pulls.push(PullCheck {
                arm: i,
                pulls: est,
                bound,
                satisfied: within(&est, bound),
            });
        }
    }

    Ok(PolicyBoundReport {
        policy: policy.label(),
        horizon,
        replications,
        stopping,
        pulls,
    })
}

/// Per-arm stopping-time inequality check.
pub fn verify_stopping_time_bound(
    instance: &BanditInstance,
    policy: &PolicySpec,
    horizon: u64,
    replications: u64,
    stream: &RandomStream,
    engine: &Engine,
) -> Result<Vec<StoppingTimeCheck>> {
    Ok(check_policy_bounds(instance, policy, horizon, replications, stream, engine)?.stopping)
}
