use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use mvbandit_core::estimators::{check_policy_bounds, verify_mv_concentration};
use mvbandit_core::experiments::{
    counterexample_experiment, default_catalog, downsample_trace, minimax_scaling_experiment,
    run_scenario, MinimaxOptions, DEFAULT_COUNTEREXAMPLE_REPLICATIONS, MAX_TRACE_POINTS,
    MIN_COUNTEREXAMPLE_REPLICATIONS,
};
use mvbandit_core::io::{
    format_float, FitRow, MinimaxCsvRow, PullRow, RegretRow, TailRow, TraceRow,
};
use mvbandit_core::stats::fit_line;
use mvbandit_core::{make_instance, CatalogConfig, Engine, PolicySpec, RandomStream};

use crate::config::{BoundsConfig, MinimaxConfig};
use crate::error::{CliError, CliResult};
use crate::output::Outputs;
use crate::CommonArgs;

fn read_config(args: &CommonArgs) -> CliResult<String> {
    let path = args
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config is required".into()))?;
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
}

fn engine(args: &CommonArgs) -> CliResult<Engine> {
    Ok(Engine::new(args.jobs)?)
}

fn out_dir(args: &CommonArgs) -> PathBuf {
    args.out.clone().unwrap_or_else(|| PathBuf::from("."))
}

fn say(stdout: &mut dyn Write, line: impl AsRef<str>) -> CliResult<()> {
    writeln!(stdout, "{}", line.as_ref())?;
    Ok(())
}

fn pm(mean: f64, se: f64) -> String {
    if se.is_finite() {
        format!("{mean:.6} ± {se:.6}")
    } else {
        format!("{mean:.6} ± n/a (single replication)")
    }
}

fn check_unique<'a>(names: impl Iterator<Item = &'a str>) -> CliResult<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(CliError::Config(format!("duplicate name `{n}`")));
        }
    }
    Ok(())
}

pub fn simulate(args: &CommonArgs, fit: bool, stdout: &mut dyn Write) -> CliResult<()> {
    let text = read_config(args)?;
    let mut scenarios = CatalogConfig::parse(&text)?.build(args.seed)?;
    if let Some(r) = args.replications {
        for s in &mut scenarios {
            s.replications = r;
            s.validate()?;
        }
    }
    let engine = engine(args)?;
    let mut outputs = Outputs::default();
    for scenario in &scenarios {
        if fit && scenario.horizons.len() < 2 {
            return Err(CliError::Config(format!(
                "scenario `{}`: a regret curve needs at least two horizons",
                scenario.name
            )));
        }
        let cells = run_scenario(scenario, &engine)?;
        let rows: Vec<RegretRow> = cells.iter().map(|c| RegretRow::from(&c.report)).collect();
        for c in &cells {
            let r = &c.report.proxy_regret_empirical;
            say(
                stdout,
                format!(
                    "{} {} T={} proxy_regret = {}",
                    scenario.name,
                    c.report.policy,
                    c.horizon,
                    pm(r.mean, r.se)
                ),
            )?;
        }
        if fit {
            let mut fits = Vec::new();
            for policy in &scenario.policies {
                let label = policy.label();
                let (xs, ys): (Vec<f64>, Vec<f64>) = rows
                    .iter()
                    .filter(|r| r.policy == label)
                    .map(|r| ((r.horizon as f64).ln(), r.proxy_emp))
                    .unzip();
                let line = fit_line(&xs, &ys);
                let row = FitRow {
                    policy: label,
                    points: xs.len(),
                    slope: line.map_or(f64::NAN, |l| l.slope),
                    intercept: line.map_or(f64::NAN, |l| l.intercept),
                    r_squared: line.map_or(f64::NAN, |l| l.r_squared),
                };
                say(
                    stdout,
                    format!(
                        "{} {} regret ≈ {} + {}·ln T (R² = {})",
                        scenario.name,
                        row.policy,
                        format_float(row.intercept),
                        format_float(row.slope),
                        format_float(row.r_squared)
                    ),
                )?;
                fits.push(row);
            }
            outputs.add_csv(format!("{}_fit.csv", scenario.name), &fits)?;
        }
        outputs.add_csv(format!("{}_regret.csv", scenario.name), &rows)?;
        if scenario.emit_trace {
            let trace = scenario.sample_trace()?;
            let rows: Vec<TraceRow> = downsample_trace(&trace, MAX_TRACE_POINTS)
                .into_iter()
                .map(|(t, arm, reward)| TraceRow { t, arm, reward })
                .collect();
            outputs.add_csv(format!("{}_trace.csv", scenario.name), &rows)?;
        }
    }
    report_written(outputs.commit(&out_dir(args), args.force)?, stdout)
}

fn report_written(paths: Vec<PathBuf>, stdout: &mut dyn Write) -> CliResult<()> {
    for p in paths {
        say(stdout, format!("wrote {}", p.display()))?;
    }
    Ok(())
}

pub fn verify_bounds(args: &CommonArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let cfg = BoundsConfig::parse(&read_config(args)?)?;
    check_unique(cfg.tails.iter().map(|t| t.name.as_str()))?;
    check_unique(cfg.pulls.iter().map(|t| t.name.as_str()))?;
    let engine = engine(args)?;
    let mut outputs = Outputs::default();
    let mut violations = Vec::new();

    for t in &cfg.tails {
        let seed = args.seed.or(t.seed).unwrap_or(0);
        let reps = args.replications.unwrap_or(t.replications);
        let report = verify_mv_concentration(
            &t.dist,
            t.rho,
            t.a,
            &t.grid(),
            reps,
            &RandomStream::new(seed),
            &engine,
        )
        .map_err(|e| CliError::from(e).in_context(&t.name))?;
        for c in report.violations() {
            violations.push(format!(
                "{}: {} tail s={} delta={} empirical={} > bound={} (se {})",
                t.name,
                c.side.as_str(),
                c.s,
                c.delta,
                format_float(c.empirical),
                format_float(c.bound),
                format_float(c.std_err)
            ));
        }
        say(
            stdout,
            format!(
                "{}: {} cells, {} violated",
                t.name,
                report.cells.len(),
                report.violations().count()
            ),
        )?;
        outputs.add_csv(
            format!("{}_tail.csv", t.name),
            &TailRow::from_report(&report),
        )?;
    }

    for p in &cfg.pulls {
        let ctx = |e: mvbandit_core::Error| CliError::from(e).in_context(&p.name);
        let instance = make_instance(p.arms.clone(), p.rho, p.a).map_err(ctx)?;
        let policy = PolicySpec::try_from(&p.policy).map_err(ctx)?;
        let seed = args.seed.or(p.seed).unwrap_or(0);
        let reps = args.replications.unwrap_or(p.replications);
        let report = check_policy_bounds(
            &instance,
            &policy,
            p.horizon,
            reps,
            &RandomStream::new(seed),
            &engine,
        )
        .map_err(ctx)?;
        let rows = PullRow::from_report(&report);
        for r in rows.iter().filter(|r| r.violated) {
            violations.push(format!(
                "{}: arm {} stopping {} vs {}, pulls {} vs {}",
                p.name,
                r.arm,
                format_float(r.stopping_lhs),
                format_float(r.stopping_rhs),
                format_float(r.pulls),
                format_float(r.pulls_bound)
            ));
        }
        say(
            stdout,
            format!(
                "{}: {} arms checked at T={}, {}",
                p.name,
                rows.len(),
                p.horizon,
                if report.is_clean() {
                    "clean"
                } else {
                    "violated"
                }
            ),
        )?;
        outputs.add_csv(format!("{}_pulls.csv", p.name), &rows)?;
    }

    report_written(outputs.commit(&out_dir(args), args.force)?, stdout)?;
    if violations.is_empty() {
        say(stdout, "all bounds hold")
    } else {
        for v in &violations {
            say(stdout, format!("VIOLATED {v}"))?;
        }
        Err(CliError::Failed(format!(
            "{} violated cells",
            violations.len()
        )))
    }
}

pub fn counterexample(args: &CommonArgs, threshold: f64, stdout: &mut dyn Write) -> CliResult<()> {
    let reps = args
        .replications
        .unwrap_or(DEFAULT_COUNTEREXAMPLE_REPLICATIONS);
    if reps < MIN_COUNTEREXAMPLE_REPLICATIONS {
        return Err(CliError::Config(format!(
            "--replications must be at least {MIN_COUNTEREXAMPLE_REPLICATIONS}"
        )));
    }
    let seed = args.seed.unwrap_or(0);
    let r = counterexample_experiment(reps, seed, threshold, &engine(args)?)?;
    say(
        stdout,
        format!("xi_single_arm = {}", format_float(r.xi_single_arm)),
    )?;
    say(
        stdout,
        format!(
            "xi_threshold = {} (threshold {threshold}, {reps} replications)",
            pm(r.xi_threshold.mean, r.xi_threshold.se)
        ),
    )?;
    if r.confirmed {
        say(stdout, "CONFIRMED")
    } else {
        say(stdout, "NOT-CONFIRMED")?;
        Err(CliError::Failed(
            "adaptive policy did not beat the single-arm benchmark".into(),
        ))
    }
}

pub fn minimax(args: &CommonArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let cfg = match &args.config {
        Some(_) => MinimaxConfig::parse(&read_config(args)?)?,
        None => MinimaxConfig::default(),
    };
    let options = MinimaxOptions {
        policy: PolicySpec::mv_dsee_model_independent(cfg.w),
        d6: cfg.d6,
        fixed_delta: None,
    };
    let report = minimax_scaling_experiment(
        &cfg.horizons,
        cfg.rho,
        args.replications.unwrap_or(cfg.replications),
        args.seed.or(cfg.seed).unwrap_or(0),
        &options,
        &engine(args)?,
    )?;
    for r in &report.rows {
        say(
            stdout,
            format!(
                "T={} delta={:.6} regret_F={} regret_F'={} max={:.6}",
                r.horizon,
                r.delta,
                pm(r.regret_f.mean, r.regret_f.se),
                pm(r.regret_f_prime.mean, r.regret_f_prime.se),
                r.max_regret
            ),
        )?;
    }
    match report.slope {
        Some(s) => say(stdout, format!("log-log slope = {}", format_float(s)))?,
        None => say(
            stdout,
            "log-log slope undefined (need two horizons with positive regret)",
        )?,
    }
    let mut outputs = Outputs::default();
    outputs.add_csv("minimax.csv".into(), &MinimaxCsvRow::from_report(&report))?;
    report_written(outputs.commit(&out_dir(args), args.force)?, stdout)
}

pub fn catalog(args: &CommonArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let mut scenarios = default_catalog();
    for s in &mut scenarios {
        if let Some(seed) = args.seed {
            s.seed = seed;
        }
        if let Some(r) = args.replications {
            s.replications = r;
        }
    }
    let mut outputs = Outputs::default();
    outputs.add_text(
        "catalog.toml".into(),
        CatalogConfig::from_scenarios(&scenarios).to_toml(),
    );
    report_written(outputs.commit(&out_dir(args), args.force)?, stdout)
}
