//! Closed-form regret bound calculators.

use crate::distribution::DistributionSpec;
use crate::error::{Error, Result};
use crate::instance::BanditInstance;
use crate::policies::default_b;

/// Default `c1` for the model-specific lower bound.
pub const DEFAULT_C1: f64 = 0.9;

fn ln_horizon(horizon: u64) -> Result<f64> {
    if horizon == 0 {
        return Err(Error::HorizonTooShort {
            horizon,
            reason: "bounds need T ≥ 1".into(),
        });
    }
    Ok((horizon as f64).ln())
}

/// Gap between true regret (against the known-model optimum) and proxy
/// regret (against the best single arm):
/// `min{σ_max²(Σ_{i≠*} Γ_{i,*}²/Δ_i + 1), (K/a)·ln T}`.
///
/// A suboptimal arm with `Δ_i = 0` and `Γ_{i,*} ≠ 0` makes the first branch
/// infinite. `0/0` terms (identical mean and mean-variance) contribute zero.
pub fn thm1_gap(instance: &BanditInstance, horizon: u64) -> Result<f64> {
    let log_t = ln_horizon(horizon)?;
    let ratio_sum: f64 = instance
        .suboptimal()
        .map(|i| {
            let g2 = instance.mean_gaps()[i].powi(2);
            let d = instance.gaps()[i];
            if g2 == 0.0 {
                0.0
            } else if d == 0.0 {
                f64::INFINITY
            } else {
                g2 / d
            }
        })
        .sum();
    let first = instance.sigma_max().powi(2) * (ratio_sum + 1.0);
    let second = instance.num_arms() as f64 / instance.a() * log_t;
    Ok(first.min(second))
}

fn check_b(instance: &BanditInstance, b: f64) -> Result<()> {
    let min_b = default_b(instance.rho(), instance.a());
    // Allow a few ulps so the default itself always qualifies.
    if !(b.is_finite() && b >= min_b * (1.0 - 1e-12)) {
        return Err(Error::NotApplicable(format!(
            "b = {b} is below sqrt(3)(2+rho)/sqrt(a) = {min_b}"
        )));
    }
    Ok(())
}

/// Bound on `E[τ_i(T)]` for a suboptimal arm under MV-UCB:
/// `4b² ln T / min{Δ_i², 4(2+ρ)²} + 5`.
pub fn suboptimal_pull_bound(
    instance: &BanditInstance,
    b: f64,
    horizon: u64,
    arm: usize,
) -> Result<f64> {
    let log_t = ln_horizon(horizon)?;
    check_b(instance, b)?;
    if arm >= instance.num_arms() {
        return Err(Error::UnknownArm {
            index: arm,
            arms: instance.num_arms(),
        });
    }
    let d = instance.gaps()[arm];
    if arm == instance.star() || d <= 0.0 {
        return Err(Error::NotApplicable(format!(
            "arm {arm} is not strictly suboptimal (Δ_i = {d})"
        )));
    }
    let rho = instance.rho();
    let denom = (d * d).min(4.0 * (2.0 + rho).powi(2));
    Ok(4.0 * b * b * log_t / denom + 5.0)
}

/// Upper bound on MV-UCB regret for an instance with `Δ > 0`.
pub fn thm3_upper_bound(instance: &BanditInstance, b: f64, horizon: u64) -> Result<f64> {
    let delta = instance.min_gap();
    if delta <= 0.0 {
        return Err(Error::NotApplicable(
            "Δ = 0: the MV-UCB upper bound requires a strictly positive gap".into(),
        ));
    }
    let mut total = 0.0;
    for i in instance.suboptimal() {
        let pulls = suboptimal_pull_bound(instance, b, horizon, i)?;
        total += pulls * (instance.gaps()[i] + instance.mean_gaps()[i].powi(2));
    }
    Ok(total + instance.variance(instance.star()) + thm1_gap(instance, horizon)?)
}

/// KL divergence `I(f, g) = E_f[ln f/g]` for two arms of the same family.
pub fn kl_divergence(f: &DistributionSpec, g: &DistributionSpec) -> Result<f64> {
    match (*f, *g) {
        (
            DistributionSpec::Gaussian {
                mean: m1,
                variance: v1,
            },
            DistributionSpec::Gaussian {
                mean: m2,
                variance: v2,
            },
        ) => Ok(((m1 - m2).powi(2) + v1 - v2) / (2.0 * v2) - 0.5 * (v1 / v2).ln()),
        (DistributionSpec::Bernoulli { p }, DistributionSpec::Bernoulli { p: q }) => {
            let term = |a: f64, b: f64| {
                if a == 0.0 {
                    0.0
                } else if b == 0.0 {
                    f64::INFINITY
                } else {
                    a * (a / b).ln()
                }
            };
            Ok(term(p, q) + term(1.0 - p, 1.0 - q))
        }
        _ => Err(Error::NotApplicable(format!(
            "KL divergence between different families ({f} vs {g})"
        ))),
    }
}

/// Asymptotic model-specific lower bound
/// `Σ_{i≠*} c1·ln T / I(f_i, f_*) · (Δ_i + Γ_{i,*}²)`.
///
/// The finite-horizon correction term is omitted, so this is the limiting
/// constant times `ln T`.
pub fn thm2_lower_bound(instance: &BanditInstance, c1: f64, horizon: u64) -> Result<f64> {
    if !(c1 > 0.0 && c1 < 1.0) {
        return Err(Error::invalid(
            "c1",
            format!("must lie in (0, 1), got {c1}"),
        ));
    }
    let log_t = ln_horizon(horizon)?;
    let arms = instance.arms();
    let star = instance.star();
    let family = arms[star].family();
    if arms.iter().any(|a| a.family() != family) {
        return Err(Error::NotApplicable(
            "the lower bound needs all arms from one family".into(),
        ));
    }
    let mut total = 0.0;
    for i in instance.suboptimal() {
        let kl = kl_divergence(&arms[i], &arms[star])?;
        if kl == 0.0 {
            return Err(Error::NotApplicable(format!(
                "arm {i} is indistinguishable from the optimal arm (zero KL divergence)"
            )));
        }
        total += c1 * log_t / kl * (instance.gaps()[i] + instance.mean_gaps()[i].powi(2));
    }
    Ok(total)
}
