use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::BanditInstance;

/// Arm-selection policy and its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum PolicySpec {
    /// Minimizes `ξ̄_i − b·sqrt(ln t / τ_i)`. `b = None` resolves to
    /// [`default_b`] for the instance it runs on.
    MvUcb { b: Option<f64> },
    /// Round-robin exploration interleaved with greedy exploitation of the
    /// sample mean-variance.
    MvDsee { mode: DseeMode },
    /// Always plays one arm.
    SingleArm { arm: usize },
    /// Two-step known-model policy: arm 0 first, then arm 0 if the first
    /// reward is below `threshold`, otherwise arm 1.
    CounterexampleThreshold { threshold: f64 },
    /// Risk-neutral UCB baseline maximizing `μ̄_i + c·sqrt(ln t / τ_i)`.
    RiskNeutralUcb { c: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DseeMode {
    /// Exploration budget `⌈f(t)·ln t⌉`.
    ModelSpecific { schedule: GrowthSchedule },
    /// Exploration budget `⌈w·t^{2/3}⌉`.
    ModelIndependent { w: f64 },
}

/// Slowly diverging growth sequences `f(t)` for model-specific exploration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum GrowthSchedule {
    /// `max(1, ln ln max(t, 3))`.
    #[default]
    LogLog,
    /// `max(1, ln t)`.
    Log,
}

impl GrowthSchedule {
    pub fn eval(self, t: u64) -> f64 {
        let t = t as f64;
        match self {
            GrowthSchedule::LogLog => t.max(3.0).ln().ln().max(1.0),
            GrowthSchedule::Log => t.ln().max(1.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GrowthSchedule::LogLog => "log_log",
            GrowthSchedule::Log => "log",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "log_log" => Some(GrowthSchedule::LogLog),
            "log" => Some(GrowthSchedule::Log),
            _ => None,
        }
    }
}

/// Smallest exploration constant for which the logarithmic MV-UCB regret
/// bound holds: `sqrt(3)·(2 + ρ)/sqrt(a)`.
pub fn default_b(rho: f64, a: f64) -> f64 {
    3f64.sqrt() * (2.0 + rho) / a.sqrt()
}

pub const DEFAULT_RN_UCB_C: f64 = std::f64::consts::SQRT_2;

impl PolicySpec {
    pub fn mv_ucb() -> Self {
        PolicySpec::MvUcb { b: None }
    }

    pub fn mv_dsee_model_independent(w: f64) -> Self {
        PolicySpec::MvDsee {
            mode: DseeMode::ModelIndependent { w },
        }
    }

    pub fn mv_dsee_model_specific() -> Self {
        PolicySpec::MvDsee {
            mode: DseeMode::ModelSpecific {
                schedule: GrowthSchedule::LogLog,
            },
        }
    }

    /// The exploration constant MV-UCB uses on `instance`.
    pub fn resolved_b(&self, instance: &BanditInstance) -> Option<f64> {
        match *self {
            PolicySpec::MvUcb { b } => {
                Some(b.unwrap_or_else(|| default_b(instance.rho(), instance.a())))
            }
            _ => None,
        }
    }

    pub fn validate(&self, num_arms: usize) -> Result<()> {
        match *self {
            PolicySpec::MvUcb { b: Some(b) } if !(b.is_finite() && b >= 0.0) => {
                Err(Error::invalid("b", format!("must be nonnegative, got {b}")))
            }
            PolicySpec::MvDsee {
                mode: DseeMode::ModelIndependent { w },
            } if !(w.is_finite() && w > 0.0) => {
                Err(Error::invalid("w", format!("must be positive, got {w}")))
            }
            PolicySpec::SingleArm { arm } if arm >= num_arms => Err(Error::UnknownArm {
                index: arm,
                arms: num_arms,
            }),
            PolicySpec::CounterexampleThreshold { threshold } if threshold.is_nan() => {
                Err(Error::invalid("threshold", "must not be NaN"))
            }
            PolicySpec::RiskNeutralUcb { c } if !(c.is_finite() && c > 0.0) => {
                Err(Error::invalid("c", format!("must be positive, got {c}")))
            }
            _ => Ok(()),
        }
    }

    /// Short identifier used in report rows.
    pub fn label(&self) -> String {
        match *self {
            PolicySpec::MvUcb { b: None } => "mv_ucb".to_string(),
            PolicySpec::MvUcb { b: Some(b) } => format!("mv_ucb[b={b}]"),
            PolicySpec::MvDsee {
                mode: DseeMode::ModelIndependent { w },
            } => format!("mv_dsee[model_independent;w={w}]"),
            PolicySpec::MvDsee {
                mode: DseeMode::ModelSpecific { schedule },
            } => format!("mv_dsee[model_specific;{}]", schedule.name()),
            PolicySpec::SingleArm { arm } => format!("single_arm[{arm}]"),
            PolicySpec::CounterexampleThreshold { threshold } => {
                format!("counterexample[{threshold}]")
            }
            PolicySpec::RiskNeutralUcb { c } => format!("rn_ucb[c={c}]"),
        }
    }
}

impl std::fmt::Display for PolicySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// Flat key-value form of a policy as it appears in config files.
///
/// `kind` is one of `mv_ucb`, `mv_dsee`, `single_arm`, `counterexample`,
/// `rn_ucb`; the remaining keys are kind-specific.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyConfig {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    /// `model_specific` or `model_independent` (default).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dsee_mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<f64>,
    /// Growth schedule for `model_specific`: `log_log` (default) or `log`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arm: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
}

impl TryFrom<&PolicyConfig> for PolicySpec {
    type Error = Error;

    fn try_from(cfg: &PolicyConfig) -> Result<Self> {
        let unexpected = |key: &str| {
            Error::Config(format!(
                "key `policy.{key}` is not valid for policy kind `{}`",
                cfg.kind
            ))
        };
        let only = |allowed: &[&str]| -> Result<()> {
            let present = [
                ("b", cfg.b.is_some()),
                ("dsee_mode", cfg.dsee_mode.is_some()),
                ("w", cfg.w.is_some()),
                ("schedule", cfg.schedule.is_some()),
                ("arm", cfg.arm.is_some()),
                ("threshold", cfg.threshold.is_some()),
                ("c", cfg.c.is_some()),
            ];
            match present.iter().find(|(k, set)| *set && !allowed.contains(k)) {
                Some((k, _)) => Err(unexpected(k)),
                None => Ok(()),
            }
        };
        match cfg.kind.as_str() {
            "mv_ucb" => {
                only(&["b"])?;
                Ok(PolicySpec::MvUcb { b: cfg.b })
            }
            "mv_dsee" => {
                only(&["dsee_mode", "w", "schedule"])?;
                match cfg.dsee_mode.as_deref().unwrap_or("model_independent") {
                    "model_independent" => {
                        if cfg.schedule.is_some() {
                            return Err(unexpected("schedule"));
                        }
                        Ok(PolicySpec::MvDsee {
                            mode: DseeMode::ModelIndependent {
                                w: cfg.w.unwrap_or(1.0),
                            },
                        })
                    }
                    "model_specific" => {
                        if cfg.w.is_some() {
                            return Err(unexpected("w"));
                        }
                        let schedule = match cfg.schedule.as_deref() {
                            None => GrowthSchedule::default(),
                            Some(name) => GrowthSchedule::from_name(name).ok_or_else(|| {
                                Error::Config(format!(
                                    "unknown `policy.schedule` `{name}` (expected log_log or log)"
                                ))
                            })?,
                        };
                        Ok(PolicySpec::MvDsee {
                            mode: DseeMode::ModelSpecific { schedule },
                        })
                    }
                    other => Err(Error::Config(format!(
                        "unknown `policy.dsee_mode` `{other}` (expected model_specific or model_independent)"
                    ))),
                }
            }
            "single_arm" => {
                only(&["arm"])?;
                let arm = cfg
                    .arm
                    .ok_or_else(|| Error::Config("single_arm policy requires key `policy.arm`".into()))?;
                Ok(PolicySpec::SingleArm { arm })
            }
            "counterexample" => {
                only(&["threshold"])?;
                Ok(PolicySpec::CounterexampleThreshold {
                    threshold: cfg.threshold.unwrap_or(0.5),
                })
            }
            "rn_ucb" => {
                only(&["c"])?;
                Ok(PolicySpec::RiskNeutralUcb {
                    c: cfg.c.unwrap_or(DEFAULT_RN_UCB_C),
                })
            }
            other => Err(Error::Config(format!(
                "unknown `policy.kind` `{other}` (expected mv_ucb, mv_dsee, single_arm, counterexample or rn_ucb)"
            ))),
        }
    }
}

impl From<&PolicySpec> for PolicyConfig {
    fn from(spec: &PolicySpec) -> Self {
        let base = |kind: &str| PolicyConfig {
            kind: kind.to_string(),
            ..Default::default()
        };
        match *spec {
            PolicySpec::MvUcb { b } => PolicyConfig {
                b,
                ..base("mv_ucb")
            },
            PolicySpec::MvDsee {
                mode: DseeMode::ModelIndependent { w },
            } => PolicyConfig {
                dsee_mode: Some("model_independent".into()),
                w: Some(w),
                ..base("mv_dsee")
            },
            PolicySpec::MvDsee {
                mode: DseeMode::ModelSpecific { schedule },
            } => PolicyConfig {
                dsee_mode: Some("model_specific".into()),
                schedule: Some(schedule.name().into()),
                ..base("mv_dsee")
            },
            PolicySpec::SingleArm { arm } => PolicyConfig {
                arm: Some(arm),
                ..base("single_arm")
            },
            PolicySpec::CounterexampleThreshold { threshold } => PolicyConfig {
                threshold: Some(threshold),
                ..base("counterexample")
            },
            PolicySpec::RiskNeutralUcb { c } => PolicyConfig {
                c: Some(c),
                ..base("rn_ucb")
            },
        }
    }
}
