//! Scenario catalog, parallel replication engine and the experiment drivers.

pub mod counterexample;
mod engine;
pub mod figures;
pub mod minimax;
pub mod scenario;

pub use counterexample::{
    counterexample_experiment, optimal_two_step_value, two_step_mv, CounterexampleReport,
    DEFAULT_COUNTEREXAMPLE_REPLICATIONS, DEFAULT_THRESHOLD, MIN_COUNTEREXAMPLE_REPLICATIONS,
};
pub use engine::Engine;
pub use figures::{
    counterexample_instance, counterexample_scenario, default_catalog, fig1_instance,
    fig1_median_path_variance, fig1_path_variances, fig1_scenario, fig2_instance, fig2_scenario,
    fig2_scenarios,
};
pub use minimax::{
    build_minimax_pair, minimax_gap, minimax_pair_for_gap, minimax_scaling_experiment,
    MinimaxInstancePair, MinimaxOptions, MinimaxReport, MinimaxRow, DEFAULT_D6,
};
pub use scenario::{
    downsample_trace, replicate, run_cell, run_scenario, CatalogConfig, CellResult, Scenario,
    ScenarioConfig, MAX_TRACE_POINTS,
};
