//! Parametric arm reward laws with closed-form moments.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stream::RandomStream;

/// Reward distribution of one arm.
///
/// Serialized as a tagged table: `{ kind = "gaussian", mean, variance }` or
/// `{ kind = "bernoulli", p }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DistributionSpec {
    Gaussian { mean: f64, variance: f64 },
    Bernoulli { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Gaussian,
    Bernoulli,
}

impl DistributionSpec {
    pub fn gaussian(mean: f64, variance: f64) -> Result<Self> {
        let d = DistributionSpec::Gaussian { mean, variance };
        d.validate()?;
        Ok(d)
    }

    pub fn bernoulli(p: f64) -> Result<Self> {
        let d = DistributionSpec::Bernoulli { p };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DistributionSpec::Gaussian { mean, variance } => {
                if !mean.is_finite() {
                    return Err(Error::invalid("mean", format!("{mean} is not finite")));
                }
                if !(variance.is_finite() && variance > 0.0) {
                    return Err(Error::invalid(
                        "variance",
                        format!("Gaussian variance must be positive, got {variance}"),
                    ));
                }
            }
            DistributionSpec::Bernoulli { p } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::invalid("p", format!("must lie in [0, 1], got {p}")));
                }
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        match self {
            DistributionSpec::Gaussian { .. } => Family::Gaussian,
            DistributionSpec::Bernoulli { .. } => Family::Bernoulli,
        }
    }

    pub fn true_mean(&self) -> f64 {
        match *self {
            DistributionSpec::Gaussian { mean, .. } => mean,
            DistributionSpec::Bernoulli { p } => p,
        }
    }

    pub fn true_variance(&self) -> f64 {
        match *self {
            DistributionSpec::Gaussian { variance, .. } => variance,
            DistributionSpec::Bernoulli { p } => p * (1.0 - p),
        }
    }

    /// `σ² − ρ·μ`.
    pub fn true_mean_variance(&self, rho: f64) -> f64 {
        self.true_variance() - rho * self.true_mean()
    }

    /// One i.i.d. draw.
    pub fn sample(&self, stream: &mut RandomStream) -> f64 {
        match *self {
            DistributionSpec::Gaussian { mean, variance } => {
                let z: f64 = StandardNormal.sample(stream);
                mean + variance.sqrt() * z
            }
            DistributionSpec::Bernoulli { p } => {
                if stream.uniform() < p {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

impl std::fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DistributionSpec::Gaussian { mean, variance } => write!(f, "N({mean}, {variance})"),
            DistributionSpec::Bernoulli { p } => write!(f, "B({p})"),
        }
    }
}
