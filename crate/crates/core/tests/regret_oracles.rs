mod common;

use mvbandit_core::experiments::{
    counterexample_experiment, counterexample_instance, fig2_instance, optimal_two_step_value,
    run_cell, Engine,
};
use mvbandit_core::regret::{single_arm_benchmark, thm1_gap, RegretAccumulator};
use mvbandit_core::stats::fit_line;
use mvbandit_core::{run_policy, PolicySpec, RandomStream, RegretReport, RunTrace};

fn traces(policy: &PolicySpec, horizon: u64, reps: u64, seed: u64) -> Vec<RunTrace> {
    let inst = fig2_instance(0.25).unwrap();
    let root = RandomStream::new(seed);
    (0..reps)
        .map(|r| run_policy(&inst, policy, horizon, &root.replication(r)).unwrap())
        .collect()
}

#[test]
fn empirical_regret_matches_two_pass_oracle() {
    let inst = fig2_instance(0.25).unwrap();
    let tr = traces(&PolicySpec::mv_ucb(), 300, 50, 1);
    let bench = 300.0 * inst.xi()[inst.star()] - inst.variance(inst.star());
    let oracle: f64 = tr
        .iter()
        .map(|t| common::path_mv(&t.rewards, 1.0) - bench)
        .sum::<f64>()
        / tr.len() as f64;
    let lib = mvbandit_core::regret::proxy_regret_empirical(&tr, &inst).unwrap();
    assert!(
        (lib.mean - oracle).abs() < 1e-9 * oracle.abs().max(1.0),
        "{lib:?} vs {oracle}"
    );
}

#[test]
fn closed_form_terms_match_direct_oracle() {
    let inst = fig2_instance(0.25).unwrap();
    let tr = traces(&PolicySpec::mv_dsee_model_independent(1.0), 200, 40, 2);
    let star = inst.star();
    let mu_star = inst.mean(star);
    let n = tr.len() as f64;
    let mut cross = 0.0;
    let mut delta = 0.0;
    let mut gamma = 0.0;
    for t in &tr {
        let mut s = 0.0;
        for arm in 0..2 {
            let xs: Vec<f64> = t
                .choices
                .iter()
                .zip(&t.rewards)
                .filter(|(c, _)| **c == arm)
                .map(|(_, r)| *r)
                .collect();
            let tau = xs.len() as f64;
            s += xs.iter().map(|x| x - mu_star).sum::<f64>();
            delta += tau * inst.gaps()[arm] / n;
            gamma += tau * (inst.mean(arm) - mu_star).powi(2) / n;
        }
        cross += s * s / 200.0 / n;
    }
    let d = mvbandit_core::regret::proxy_regret_closed_form(&tr, &inst).unwrap();
    assert!((d.term_delta.mean - delta).abs() < 1e-9);
    assert!((d.term_gamma.mean - gamma).abs() < 1e-9);
    assert!((d.term_cross.mean - cross).abs() < 1e-9 * cross.max(1.0));
    assert_eq!(d.term_sigma.mean, inst.variance(star));
    let total = delta + gamma - cross + inst.variance(star);
    assert!((d.total.mean - total).abs() < 1e-9 * total.abs().max(1.0));
}

#[test]
fn empirical_and_closed_form_agree() {
    let inst = fig2_instance(0.25).unwrap();
    let engine = Engine::default();
    let root = RandomStream::new(3);
    for policy in [
        PolicySpec::mv_ucb(),
        PolicySpec::mv_dsee_model_independent(1.0),
        PolicySpec::mv_dsee_model_specific(),
        PolicySpec::RiskNeutralUcb { c: 2.0 },
        PolicySpec::SingleArm { arm: 0 },
        PolicySpec::SingleArm { arm: 1 },
    ] {
        let acc = run_cell(&inst, &policy, 500, 3000, &root, &engine).unwrap();
        let r = RegretReport::from_accumulator(&policy, &inst, &acc).unwrap();
        let emp = r.proxy_regret_empirical;
        let cf = r.proxy_regret_closed_form();
        assert!(
            emp.agrees_with(&cf, 3.0),
            "{}: {emp:?} vs {cf:?}",
            policy.label()
        );
    }
}

#[test]
fn single_arm_regret_matches_analytic_value() {
    let inst = fig2_instance(0.25).unwrap();
    let engine = Engine::default();
    let root = RandomStream::new(4);
    let (j, star) = (1, inst.star());
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for t in [100u64, 1_000, 10_000] {
        let acc = run_cell(
            &inst,
            &PolicySpec::SingleArm { arm: j },
            t,
            400,
            &root,
            &engine,
        )
        .unwrap();
        let r = acc.proxy_regret_empirical(&inst).unwrap();
        // T·Δ_j − σ_j² + σ_*²: a single arm's path variance has expectation (T−1)σ_j²
        let analytic = t as f64 * inst.gaps()[j] - inst.variance(j) + inst.variance(star);
        assert!(
            (r.mean - analytic).abs() <= 3.0 * r.se,
            "T={t}: {r:?} vs {analytic}"
        );
        xs.push(t as f64);
        ys.push(r.mean);
    }
    let fit = fit_line(&xs, &ys).unwrap();
    assert!(
        (fit.slope - inst.gaps()[j]).abs() <= 0.05 * inst.gaps()[j],
        "{fit:?}"
    );

    let acc = run_cell(
        &inst,
        &PolicySpec::SingleArm { arm: star },
        1_000,
        400,
        &root,
        &engine,
    )
    .unwrap();
    let r = acc.proxy_regret_empirical(&inst).unwrap();
    assert!(r.mean.abs() <= 3.0 * r.se, "{r:?}");
}

#[test]
fn accumulator_merge_matches_sequential() {
    let inst = fig2_instance(0.1).unwrap();
    let tr = traces(&PolicySpec::mv_ucb(), 100, 30, 5);
    let summaries: Vec<_> = tr
        .iter()
        .map(|t| mvbandit_core::TraceSummary::new(t, 1.0).unwrap())
        .collect();
    let mut whole = RegretAccumulator::new();
    let mut left = RegretAccumulator::new();
    let mut right = RegretAccumulator::new();
    for (i, s) in summaries.iter().enumerate() {
        whole.push(s, &inst).unwrap();
        if i < 13 {
            left.push(s, &inst).unwrap()
        } else {
            right.push(s, &inst).unwrap()
        }
    }
    let merged = left.merge(&right).unwrap();
    let a = whole.proxy_regret_empirical(&inst).unwrap();
    let b = merged.proxy_regret_empirical(&inst).unwrap();
    assert!((a.mean - b.mean).abs() < 1e-9 && (a.se - b.se).abs() < 1e-9);
}

#[test]
fn threshold_policy_matches_quadrature_oracle() {
    let engine = Engine::default();
    for threshold in [0.5, -1.0, 2.0] {
        let r = counterexample_experiment(200_000, 11, threshold, &engine).unwrap();
        let oracle = common::threshold_policy_value(threshold);
        assert!(
            (r.xi_threshold.mean - oracle).abs() <= 3.0 * r.xi_threshold.se,
            "threshold {threshold}: {:?} vs {oracle}",
            r.xi_threshold
        );
    }
    assert!(common::threshold_policy_value(0.5) < 0.7);
    // stay forever reproduces the single-arm benchmark
    assert!((common::threshold_policy_value(f64::INFINITY) - 1.0).abs() < 1e-9);
}

#[test]
fn gap_bound_encloses_true_regret_on_two_step_instance() {
    let inst = counterexample_instance();
    let bench = single_arm_benchmark(&inst, 2).unwrap();
    assert_eq!(bench, 1.0);
    let opt = optimal_two_step_value(&inst).unwrap();
    assert!((opt - common::best_adaptive_value()).abs() < 1e-6, "{opt}");
    assert!(opt < common::threshold_policy_value(0.5));
    // R − R̂ = ξ_{single arm} − ξ_{optimal}
    let diff = bench - opt;
    let gap = thm1_gap(&inst, 2).unwrap();
    assert!(diff >= 0.0 && diff <= gap, "diff {diff}, gap {gap}");
}

#[test]
fn upper_bound_dominates_measured_regret() {
    let engine = Engine::default();
    let root = RandomStream::new(6);
    for delta in [0.1, 0.25, 0.4] {
        let inst = fig2_instance(delta).unwrap();
        let acc = run_cell(&inst, &PolicySpec::mv_ucb(), 1_000, 300, &root, &engine).unwrap();
        let r = RegretReport::from_accumulator(&PolicySpec::mv_ucb(), &inst, &acc).unwrap();
        let bound = r.bounds.thm3_upper.unwrap();
        assert!(r.proxy_regret_empirical.lower(3.0) <= bound);
        let (lo, hi) = r.regret_enclosure();
        assert!((hi - lo - r.bounds.thm1_gap).abs() <= 1e-9 * hi.abs());
    }
}
