//! Bandit instances and their derived gap quantities.

use serde::{Deserialize, Serialize};

use crate::distribution::DistributionSpec;
use crate::error::{Error, Result};

/// Default concentration constant used when an instance does not specify one.
pub const DEFAULT_A: f64 = 0.25;

/// K arm distributions plus risk tolerance `rho` and concentration constant `a`.
///
/// Arm indices are 0-based. The optimal arm is the minimizer of the
/// mean-variance `σ² − ρμ`, ties going to the lowest index.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditInstance {
    arms: Vec<DistributionSpec>,
    rho: f64,
    a: f64,
    xi: Vec<f64>,
    star: usize,
    gaps: Vec<f64>,
    mean_gaps: Vec<f64>,
}

/// Serializable form of an instance: keys `rho`, `a` (optional) and `arms`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub rho: f64,
    #[serde(default = "default_a")]
    pub a: f64,
    pub arms: Vec<DistributionSpec>,
}

fn default_a() -> f64 {
    DEFAULT_A
}

impl InstanceConfig {
    pub fn build(&self) -> Result<BanditInstance> {
        make_instance(self.arms.clone(), self.rho, self.a)
    }
}

impl From<&BanditInstance> for InstanceConfig {
    fn from(inst: &BanditInstance) -> Self {
        InstanceConfig {
            rho: inst.rho,
            a: inst.a,
            arms: inst.arms.clone(),
        }
    }
}

/// Builds an instance and populates all derived fields.
pub fn make_instance(arms: Vec<DistributionSpec>, rho: f64, a: f64) -> Result<BanditInstance> {
    if arms.len() < 2 {
        return Err(Error::invalid(
            "arms",
            format!("need at least 2 arms, got {}", arms.len()),
        ));
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
    for arm in &arms {
        arm.validate()?;
    }

    let xi: Vec<f64> = arms.iter().map(|d| d.true_mean_variance(rho)).collect();
    let star = argmin(&xi);
    let gaps = xi.iter().map(|x| x - xi[star]).collect();
    let mu_star = arms[star].true_mean();
    let mean_gaps = arms.iter().map(|d| d.true_mean() - mu_star).collect();

    Ok(BanditInstance {
        arms,
        rho,
        a,
        xi,
        star,
        gaps,
        mean_gaps,
    })
}

/// Index of the smallest value, lowest index on ties.
pub(crate) fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = i;
        }
    }
    best
}

impl BanditInstance {
    pub fn arms(&self) -> &[DistributionSpec] {
        &self.arms
    }

    pub fn num_arms(&self) -> usize {
        self.arms.len()
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Same arms and `rho`, different concentration constant.
    pub fn with_a(&self, a: f64) -> Result<BanditInstance> {
        make_instance(self.arms.clone(), self.rho, a)
    }

    /// True mean-variance of every arm.
    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn star(&self) -> usize {
        self.star
    }

    /// `Δ_i = ξ_i − ξ_*`.
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    /// `Γ_{i,*} = μ_i − μ_*`.
    pub fn mean_gaps(&self) -> &[f64] {
        &self.mean_gaps
    }

    pub fn mean(&self, arm: usize) -> f64 {
        self.arms[arm].true_mean()
    }

    pub fn variance(&self, arm: usize) -> f64 {
        self.arms[arm].true_variance()
    }

    /// `Δ = min_{i≠*} Δ_i`.
    pub fn min_gap(&self) -> f64 {
        self.suboptimal()
            .map(|i| self.gaps[i])
            .fold(f64::INFINITY, f64::min)
    }

    /// `Γ = max_i |Γ_{i,*}|`.
    pub fn max_mean_gap(&self) -> f64 {
        self.mean_gaps.iter().map(|g| g.abs()).fold(0.0, f64::max)
    }

    pub fn sigma_max(&self) -> f64 {
        self.arms
            .iter()
            .map(|d| d.true_variance().sqrt())
            .fold(0.0, f64::max)
    }

    pub fn mu_max(&self) -> f64 {
        self.arms
            .iter()
            .map(|d| d.true_mean())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Indices `i ≠ *`.
    pub fn suboptimal(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.arms.len()).filter(move |&i| i != self.star)
    }
}
