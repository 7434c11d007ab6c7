use mvbandit_core::experiments::{
    default_catalog, fig1_median_path_variance, fig2_scenario, run_cell, run_scenario, Engine,
};
use mvbandit_core::{PolicySpec, RandomStream};

#[test]
fn smaller_gap_means_larger_regret_with_moderate_bonus() {
    // At the default bonus scale exploration is near uniform for T ≤ 10⁴ and
    // the ordering inverts; b = 1 puts the index in its logarithmic regime.
    let policy = PolicySpec::MvUcb { b: Some(1.0) };
    let engine = Engine::default();
    let root = RandomStream::new(8);
    let mut prev: Option<mvbandit_core::Estimate> = None;
    for delta in [0.4, 0.25, 0.1] {
        let inst = mvbandit_core::experiments::fig2_instance(delta).unwrap();
        let r = run_cell(&inst, &policy, 10_000, 200, &root, &engine)
            .unwrap()
            .proxy_regret_empirical(&inst)
            .unwrap();
        if let Some(p) = prev {
            assert!(
                r.mean + 3.0 * r.combined_se(&p) > p.mean,
                "{delta}: {r:?} vs {p:?}"
            );
        }
        prev = Some(r);
    }
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let mut s = fig2_scenario(0.25).unwrap();
    s.horizons = vec![50, 200];
    s.replications = 64;
    s.policies.push(PolicySpec::mv_dsee_model_independent(1.0));
    let one = run_scenario(&s, &Engine::new(Some(1)).unwrap()).unwrap();
    let four = run_scenario(&s, &Engine::new(Some(4)).unwrap()).unwrap();
    assert_eq!(one, four);
}

#[test]
fn doubling_replications_is_consistent() {
    let mut s = fig2_scenario(0.25).unwrap();
    s.horizons = vec![500];
    s.replications = 500;
    let engine = Engine::default();
    let a = run_scenario(&s, &engine)
        .unwrap()
        .remove(0)
        .report
        .proxy_regret_empirical;
    s.replications = 1000;
    s.seed += 1;
    let b = run_scenario(&s, &engine)
        .unwrap()
        .remove(0)
        .report
        .proxy_regret_empirical;
    assert!(a.agrees_with(&b, 3.0), "{a:?} vs {b:?}");
}

#[test]
fn lower_risk_tolerance_lowers_volatility() {
    let engine = Engine::default();
    let low = fig1_median_path_variance(1.0, 5_000, 40, 3, &engine).unwrap();
    let high = fig1_median_path_variance(5.0, 5_000, 40, 3, &engine).unwrap();
    assert!(low < high, "{low} vs {high}");
}

#[test]
fn catalog_scenarios_have_unique_names() {
    let cat = default_catalog();
    let mut names: Vec<_> = cat.iter().map(|s| s.name.clone()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), cat.len());
}
