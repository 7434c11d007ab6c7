//! Reference implementations written independently of the library, used as
//! oracles by the integration tests.
#![allow(dead_code)]

/// Two-pass biased variance.
pub fn two_pass_variance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n
}

/// `Σ(x − x̄)² − ρΣx`, computed in two passes.
pub fn path_mv(xs: &[f64], rho: f64) -> f64 {
    xs.len() as f64 * two_pass_variance(xs) - rho * xs.iter().sum::<f64>()
}

pub fn bernoulli_xi(p: f64, rho: f64) -> f64 {
    p * (1.0 - p) - rho * p
}

pub fn gaussian_xi(mean: f64, var: f64, rho: f64) -> f64 {
    var - rho * mean
}

fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// `∫ φ(x) h(x) dx` by the trapezoid rule on `[−12, 12]` with a fine grid.
pub fn normal_expectation(h: impl Fn(f64) -> f64) -> f64 {
    let n = 200_000;
    let (lo, hi) = (-12.0, 12.0);
    let step = (hi - lo) / n as f64;
    let mut acc = 0.5 * (normal_pdf(lo) * h(lo) + normal_pdf(hi) * h(hi));
    for i in 1..n {
        let x = lo + i as f64 * step;
        acc += normal_pdf(x) * h(x);
    }
    acc * step
}

/// Value of the threshold policy on `N(0,1)` vs `N(1, 2.1)` at `ρ = 1`:
/// after observing `x` from arm 0, stay if `x < threshold`, else switch.
pub fn threshold_policy_value(threshold: f64) -> f64 {
    let stay = |x: f64| (x * x + 1.0) / 2.0 - x;
    let switch = |x: f64| ((x - 1.0) * (x - 1.0) + 2.1) / 2.0 - (x + 1.0);
    normal_expectation(|x| if x < threshold { stay(x) } else { switch(x) })
}

/// Best two-step value on the same instance: choose the first arm, then
/// stay or switch, whichever lowers the conditional value.
pub fn best_adaptive_value() -> f64 {
    let arms: [(f64, f64); 2] = [(0.0, 1.0), (1.0, 2.1)];
    let cond = |x: f64, (m, v): (f64, f64)| ((x - m) * (x - m) + v) / 2.0 - (x + m);
    arms.iter()
        .map(|&(m, v)| {
            normal_expectation(|z| {
                let x = m + v.sqrt() * z;
                cond(x, arms[0]).min(cond(x, arms[1]))
            })
        })
        .fold(f64::INFINITY, f64::min)
}
