//! Risk-averse multi-armed bandits under the mean-variance criterion.
//!
//! An arm's mean-variance is `ξ = σ² − ρμ` (lower is better). A policy is
//! judged by the cumulative mean-variance of the whole reward path it
//! produces, `Σ(x_t − x̄)² − ρΣx_t`, so switching between arms with different
//! means is itself penalised.
//!
//! The crate provides arm models and instances, the MV-UCB and MV-DSEE
//! policies with baselines, regret estimators with a closed-form
//! decomposition, theoretical bound calculators, Monte Carlo checks of the
//! underlying concentration inequalities, and experiment drivers writing CSV.

pub mod distribution;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod instance;
pub mod io;
pub mod policies;
pub mod regret;
pub mod stats;
pub mod stream;

pub use distribution::{DistributionSpec, Family};
pub use error::{Error, Result};
pub use estimators::{StreamingMoments, VarianceEstimator};
pub use experiments::{run_scenario, CatalogConfig, Engine, Scenario};
pub use instance::{make_instance, BanditInstance, InstanceConfig, DEFAULT_A};
pub use policies::{run_policy, PolicyConfig, PolicySpec, RunTrace};
pub use regret::{RegretReport, TraceSummary};
pub use stats::Estimate;
pub use stream::RandomStream;
