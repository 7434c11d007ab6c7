//! Streaming sample statistics and empirical checks of concentration bounds.

pub mod concentration;
mod moments;

pub use concentration::{
    check_policy_bounds, mv_tail_bound, stopping_time_rhs, verify_mv_concentration,
    verify_stopping_time_bound, PolicyBoundReport, PullCheck, StoppingTimeCheck, TailCell,
    TailCheckReport, TailSide, Verdict, MIN_TAIL_REPLICATIONS, SE_MULTIPLIER,
};
pub use moments::{StreamingMoments, VarianceEstimator};
