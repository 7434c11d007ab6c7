//! Worst-case instance pairs whose gap shrinks with the horizon, and the
//! regret-scaling experiment run on them.

use serde::{Deserialize, Serialize};

use crate::distribution::DistributionSpec;
use crate::error::{Error, Result};
use crate::experiments::scenario::run_cell;
use crate::experiments::Engine;
use crate::instance::{make_instance, BanditInstance, DEFAULT_A};
use crate::policies::PolicySpec;
use crate::stats::{log_log_slope, Estimate};
use crate::stream::RandomStream;

pub const DEFAULT_D6: f64 = 0.3;
const GAP_TOLERANCE: f64 = 1e-12;

/// Two instances sharing a Gaussian arm 0 and differing in the Bernoulli arm
/// 1; the optimal arm differs between them and both gaps equal `delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxInstancePair {
    pub f: BanditInstance,
    pub f_prime: BanditInstance,
    pub delta: f64,
    pub horizon: u64,
}

/// `Δ(T) = d₆·T^{−1/3}`.
pub fn minimax_gap(horizon: u64, d6: f64) -> f64 {
    d6 * (horizon as f64).powf(-1.0 / 3.0)
}

fn gap_of(inst: &BanditInstance) -> f64 {
    (inst.xi()[1] - inst.xi()[0]).abs()
}

/// Builds the pair with mean-variance gap exactly `delta` at risk tolerance
/// `rho`.
pub fn minimax_pair_for_gap(delta: f64, rho: f64) -> Result<(BanditInstance, BanditInstance)> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::invalid(
            "delta",
            format!("must be positive, got {delta}"),
        ));
    }
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(Error::invalid(
            "rho",
            format!("must be finite and non-negative, got {rho}"),
        ));
    }
    // The shape parameter moves the Bernoulli arm's mean-variance by
    // (1 − 2ρ)·shape, or by shape/2 in the ρ = 1/2 family.
    let (mean1, var1, p, q) = if rho == 0.5 {
        let s = 2.0 * delta;
        (
            5.0 / 6.0,
            17.0 / 36.0 - 9.0 * s * s,
            1.0 / 3.0 + 3.0 * s,
            1.0 / 3.0 - 3.0 * s,
        )
    } else {
        let s = delta / (1.0 - 2.0 * rho).abs();
        (
            0.75,
            3.0 / 16.0 - 4.0 * s * s + rho / 2.0,
            0.25 + 2.0 * s,
            0.25 - 2.0 * s,
        )
    };
    if var1.is_nan() || var1 <= 0.0 {
        return Err(Error::Infeasible(format!(
            "gap {delta} at rho {rho} gives non-positive Gaussian variance {var1}"
        )));
    }
    for (name, v) in [("p", p), ("q", q)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::Infeasible(format!(
                "gap {delta} at rho {rho} gives Bernoulli {name} = {v} outside (0, 1)"
            )));
        }
    }
    let g = DistributionSpec::gaussian(mean1, var1)?;
    let f = make_instance(vec![g, DistributionSpec::bernoulli(p)?], rho, DEFAULT_A)?;
    let f_prime = make_instance(vec![g, DistributionSpec::bernoulli(q)?], rho, DEFAULT_A)?;
    for inst in [&f, &f_prime] {
        if (gap_of(inst) - delta).abs() > GAP_TOLERANCE {
            return Err(Error::Infeasible(format!(
                "constructed gap {} differs from requested {delta}",
                gap_of(inst)
            )));
        }
    }
    if f.star() == f_prime.star() {
        return Err(Error::Infeasible(format!(
            "gap {delta} at rho {rho} does not switch the optimal arm"
        )));
    }
    Ok((f, f_prime))
}

pub fn build_minimax_pair(horizon: u64, rho: f64, d6: f64) -> Result<MinimaxInstancePair> {
    if horizon == 0 {
        return Err(Error::HorizonTooShort {
            horizon,
            reason: "the gap schedule needs T ≥ 1".into(),
        });
    }
    if !(d6 > 0.0 && d6.is_finite()) {
        return Err(Error::invalid("d6", format!("must be positive, got {d6}")));
    }
    let delta = minimax_gap(horizon, d6);
    let (f, f_prime) = minimax_pair_for_gap(delta, rho)?;
    Ok(MinimaxInstancePair {
        f,
        f_prime,
        delta,
        horizon,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxOptions {
    pub policy: PolicySpec,
    pub d6: f64,
    /// Use this gap at every horizon instead of the shrinking schedule.
    pub fixed_delta: Option<f64>,
}

impl Default for MinimaxOptions {
    fn default() -> Self {
        MinimaxOptions {
            policy: PolicySpec::mv_dsee_model_independent(1.0),
            d6: DEFAULT_D6,
            fixed_delta: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimaxRow {
    pub horizon: u64,
    pub delta: f64,
    pub regret_f: Estimate,
    pub regret_f_prime: Estimate,
    pub max_regret: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimaxReport {
    pub policy: String,
    pub rho: f64,
    pub rows: Vec<MinimaxRow>,
    /// Log-log slope of `max_regret` against `T`; `None` when fewer than two
    /// horizons or a non-positive regret make it undefined.
    pub slope: Option<f64>,
}

pub fn minimax_scaling_experiment(
    horizons: &[u64],
    rho: f64,
    replications: u64,
    seed: u64,
    options: &MinimaxOptions,
    engine: &Engine,
) -> Result<MinimaxReport> {
    if horizons.is_empty() {
        return Err(Error::Config("no horizons listed".into()));
    }
    if replications == 0 {
        return Err(Error::invalid("replications", "must be positive"));
    }
    let root = RandomStream::new(seed);
    let mut rows = Vec::with_capacity(horizons.len());
    for &horizon in horizons {
        let (f, f_prime, delta) = match options.fixed_delta {
            Some(d) => {
                let (f, fp) = minimax_pair_for_gap(d, rho)?;
                (f, fp, d)
            }
            None => {
                let pair = build_minimax_pair(horizon, rho, options.d6)?;
                (pair.f, pair.f_prime, pair.delta)
            }
        };
        let cell_root = root.split(horizon);
        let regret = |inst: &BanditInstance| -> Result<Estimate> {
            run_cell(
                inst,
                &options.policy,
                horizon,
                replications,
                &cell_root,
                engine,
            )?
            .proxy_regret_empirical(inst)
        };
        let regret_f = regret(&f)?;
        let regret_f_prime = regret(&f_prime)?;
        rows.push(MinimaxRow {
            horizon,
            delta,
            max_regret: regret_f.mean.max(regret_f_prime.mean),
            regret_f,
            regret_f_prime,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.horizon as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.max_regret).collect();
    let slope = if rows.len() >= 2 && ys.iter().all(|&y| y > 0.0) {
        log_log_slope(&xs, &ys)
    } else {
        None
    };
    Ok(MinimaxReport {
        policy: options.policy.label(),
        rho,
        rows,
        slope,
    })
}
