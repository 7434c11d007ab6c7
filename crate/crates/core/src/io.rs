//! CSV schemas for reports. Floats are written with 17 significant digits so
//! every value reads back bit-for-bit; undefined values are written as `NaN`.

use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{PolicyBoundReport, TailCheckReport};
use crate::experiments::MinimaxReport;
use crate::regret::RegretReport;

/// Round-trippable float text: `{:.16e}`, with `NaN` for missing values.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn opt(x: Option<f64>) -> f64 {
    x.unwrap_or(f64::NAN)
}

/// A flat CSV record with a fixed header.
pub trait CsvRecord: DeserializeOwned {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

pub fn write_csv<W: Write, T: CsvRecord>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Config(format!("writing CSV: {e}"));
    w.write_record(T::HEADER).map_err(io)?;
    for r in rows {
        w.write_record(r.fields()).map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Config(format!("writing CSV: {e}")))
}

pub fn read_csv<R: Read, T: CsvRecord>(input: R) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r
        .headers()
        .map_err(|e| Error::Config(format!("reading CSV: {e}")))?
        .clone();
    if headers.iter().ne(T::HEADER.iter().copied()) {
        return Err(Error::Config(format!(
            "unexpected CSV header {:?}, expected {:?}",
            headers.iter().collect::<Vec<_>>(),
            T::HEADER
        )));
    }
    r.deserialize()
        .map(|row| row.map_err(|e| Error::Config(format!("reading CSV: {e}"))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretRow {
    pub policy: String,
    #[serde(rename = "T")]
    pub horizon: u64,
    pub replications: u64,
    pub empirical_xi: f64,
    /// Standard error shared by `empirical_xi` and `proxy_emp`.
    pub se: f64,
    pub benchmark: f64,
    pub proxy_emp: f64,
    pub proxy_cf: f64,
    pub term_delta: f64,
    pub term_gamma: f64,
    pub term_cross: f64,
    pub term_sigma: f64,
    pub thm3_upper: f64,
    pub thm2_lower: f64,
    pub thm1_gap: f64,
}

impl From<&RegretReport> for RegretRow {
    fn from(r: &RegretReport) -> Self {
        let d = &r.decomposition;
        RegretRow {
            policy: r.policy.clone(),
            horizon: r.horizon,
            replications: r.replications,
            empirical_xi: r.empirical_xi.mean,
            se: r.empirical_xi.se,
            benchmark: r.benchmark_xi_single_arm,
            proxy_emp: r.proxy_regret_empirical.mean,
            proxy_cf: d.total.mean,
            term_delta: d.term_delta.mean,
            term_gamma: d.term_gamma.mean,
            term_cross: d.term_cross.mean,
            term_sigma: d.term_sigma.mean,
            thm3_upper: opt(r.bounds.thm3_upper),
            thm2_lower: opt(r.bounds.thm2_lower),
            thm1_gap: r.bounds.thm1_gap,
        }
    }
}

impl CsvRecord for RegretRow {
    const HEADER: &'static [&'static str] = &[
        "policy",
        "T",
        "replications",
        "empirical_xi",
        "se",
        "benchmark",
        "proxy_emp",
        "proxy_cf",
        "term_delta",
        "term_gamma",
        "term_cross",
        "term_sigma",
        "thm3_upper",
        "thm2_lower",
        "thm1_gap",
    ];

    fn fields(&self) -> Vec<String> {
        let mut v = vec![
            self.policy.clone(),
            self.horizon.to_string(),
            self.replications.to_string(),
        ];
        v.extend(
            [
                self.empirical_xi,
                self.se,
                self.benchmark,
                self.proxy_emp,
                self.proxy_cf,
                self.term_delta,
                self.term_gamma,
                self.term_cross,
                self.term_sigma,
                self.thm3_upper,
                self.thm2_lower,
                self.thm1_gap,
            ]
            .map(format_float),
        );
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailRow {
    pub s: u64,
    pub delta: f64,
    pub tail_side: String,
    pub empirical: f64,
    pub bound: f64,
    pub std_err: f64,
    /// `true`, `false`, or `n/a`.
    pub violated: String,
}

impl TailRow {
    pub fn from_report(report: &TailCheckReport) -> Vec<TailRow> {
        report
            .cells
            .iter()
            .map(|c| TailRow {
                s: c.s,
                delta: c.delta,
                tail_side: c.side.as_str().to_string(),
                empirical: c.empirical,
                bound: c.bound,
                std_err: c.std_err,
                violated: c.verdict.as_str().to_string(),
            })
            .collect()
    }
}

impl CsvRecord for TailRow {
    const HEADER: &'static [&'static str] = &[
        "s",
        "delta",
        "tail_side",
        "empirical",
        "bound",
        "std_err",
        "violated",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.s.to_string(),
            format_float(self.delta),
            self.tail_side.clone(),
            format_float(self.empirical),
            format_float(self.bound),
            format_float(self.std_err),
            self.violated.clone(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub t: u64,
    pub arm: usize,
    pub reward: f64,
}

impl CsvRecord for TraceRow {
    const HEADER: &'static [&'static str] = &["t", "arm", "reward"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.t.to_string(),
            self.arm.to_string(),
            format_float(self.reward),
        ]
    }
}

/// Per-arm stopping-time and pull-count checks. `pulls_*` columns are `NaN`
/// for policies without a pull bound and for the optimal arm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PullRow {
    pub policy: String,
    #[serde(rename = "T")]
    pub horizon: u64,
    pub arm: usize,
    pub stopping_lhs: f64,
    pub stopping_se: f64,
    pub stopping_rhs: f64,
    pub pulls: f64,
    pub pulls_se: f64,
    pub pulls_bound: f64,
    pub violated: bool,
}

impl PullRow {
    pub fn from_report(report: &PolicyBoundReport) -> Vec<PullRow> {
        report
            .stopping
            .iter()
            .map(|st| {
                let pull = report.pulls.iter().find(|p| p.arm == st.arm);
                PullRow {
                    policy: report.policy.clone(),
                    horizon: report.horizon,
                    arm: st.arm,
                    stopping_lhs: st.lhs.mean,
                    stopping_se: st.lhs.se,
                    stopping_rhs: st.rhs,
                    pulls: opt(pull.map(|p| p.pulls.mean)),
                    pulls_se: opt(pull.map(|p| p.pulls.se)),
                    pulls_bound: opt(pull.map(|p| p.bound)),
                    violated: !st.satisfied || pull.is_some_and(|p| !p.satisfied),
                }
            })
            .collect()
    }
}

impl CsvRecord for PullRow {
    const HEADER: &'static [&'static str] = &[
        "policy",
        "T",
        "arm",
        "stopping_lhs",
        "stopping_se",
        "stopping_rhs",
        "pulls",
        "pulls_se",
        "pulls_bound",
        "violated",
    ];

    fn fields(&self) -> Vec<String> {
        let mut v = vec![
            self.policy.clone(),
            self.horizon.to_string(),
            self.arm.to_string(),
        ];
        v.extend(
            [
                self.stopping_lhs,
                self.stopping_se,
                self.stopping_rhs,
                self.pulls,
                self.pulls_se,
                self.pulls_bound,
            ]
            .map(format_float),
        );
        v.push(self.violated.to_string());
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimaxCsvRow {
    #[serde(rename = "T")]
    pub horizon: u64,
    pub delta: f64,
    pub regret_f: f64,
    pub se_f: f64,
    pub regret_f_prime: f64,
    pub se_f_prime: f64,
    pub max_regret: f64,
}

impl MinimaxCsvRow {
    pub fn from_report(report: &MinimaxReport) -> Vec<MinimaxCsvRow> {
        report
            .rows
            .iter()
            .map(|r| MinimaxCsvRow {
                horizon: r.horizon,
                delta: r.delta,
                regret_f: r.regret_f.mean,
                se_f: r.regret_f.se,
                regret_f_prime: r.regret_f_prime.mean,
                se_f_prime: r.regret_f_prime.se,
                max_regret: r.max_regret,
            })
            .collect()
    }
}

impl CsvRecord for MinimaxCsvRow {
    const HEADER: &'static [&'static str] = &[
        "T",
        "delta",
        "regret_f",
        "se_f",
        "regret_f_prime",
        "se_f_prime",
        "max_regret",
    ];

    fn fields(&self) -> Vec<String> {
        let mut v = vec![self.horizon.to_string()];
        v.extend(
            [
                self.delta,
                self.regret_f,
                self.se_f,
                self.regret_f_prime,
                self.se_f_prime,
                self.max_regret,
            ]
            .map(format_float),
        );
        v
    }
}

/// Linear fit of proxy regret against `ln T` for one policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRow {
    pub policy: String,
    pub points: usize,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl CsvRecord for FitRow {
    const HEADER: &'static [&'static str] =
        &["policy", "points", "slope", "intercept", "r_squared"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.policy.clone(),
            self.points.to_string(),
            format_float(self.slope),
            format_float(self.intercept),
            format_float(self.r_squared),
        ]
    }
}
