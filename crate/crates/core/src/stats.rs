//! Monte Carlo point estimates and least-squares line fits.

use serde::{Deserialize, Serialize};

use crate::estimators::StreamingMoments;

/// A Monte Carlo mean with its standard error. `se` is NaN when fewer than
/// two replications contributed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub se: f64,
    pub n: u64,
}

impl Estimate {
    pub fn from_moments(m: &StreamingMoments) -> Self {
        Estimate {
            mean: m.mean().unwrap_or(f64::NAN),
            se: m.std_error().unwrap_or(f64::NAN),
            n: m.count(),
        }
    }

    pub fn from_samples(xs: impl IntoIterator<Item = f64>) -> Self {
        Self::from_moments(&xs.into_iter().collect())
    }

    pub fn exact(value: f64) -> Self {
        Estimate {
            mean: value,
            se: 0.0,
            n: 0,
        }
    }

    pub fn has_se(&self) -> bool {
        self.se.is_finite()
    }

    /// `mean + k·se`.
    pub fn upper(&self, k: f64) -> f64 {
        self.mean + k * self.se
    }

    pub fn lower(&self, k: f64) -> f64 {
        self.mean - k * self.se
    }

    /// `sqrt(se_a² + se_b²)`.
    pub fn combined_se(&self, other: &Estimate) -> f64 {
        self.se.hypot(other.se)
    }

    /// Whether two estimates agree within `k` combined standard errors.
    pub fn agrees_with(&self, other: &Estimate, k: f64) -> bool {
        (self.mean - other.mean).abs() <= k * self.combined_se(other)
    }
}

impl std::fmt::Display for Estimate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.6} ± {:.6}", self.mean, self.se)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares `y ≈ intercept + slope·x`. `None` with fewer than
/// two points or when all `x` coincide.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    assert_eq!(xs.len(), ys.len());
    if xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Some(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if ys.iter().any(|&y| y <= 0.0) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    fit_line(&lx, &ly).map(|f| f.slope)
}

/// Median of a non-empty slice (mean of the middle pair for even lengths).
pub fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let mid = v.len() / 2;
    Some(if v.len().is_multiple_of(2) {
        0.5 * (v[mid - 1] + v[mid])
    } else {
        v[mid]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x - 1.0).collect();
        let f = fit_line(&xs, &ys).unwrap();
        assert!((f.slope - 3.0).abs() < 1e-12);
        assert!((f.intercept + 1.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_fits() {
        assert!(fit_line(&[1.0], &[2.0]).is_none());
        assert!(fit_line(&[1.0, 1.0], &[2.0, 3.0]).is_none());
        assert!(log_log_slope(&[10.0], &[3.0]).is_none());
    }

    #[test]
    fn power_law_slope() {
        let xs = [1e3, 3e3, 1e4, 3e4];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 2.0 * x.powf(2.0 / 3.0)).collect();
        assert!((log_log_slope(&xs, &ys).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn estimate_from_samples() {
        let e = Estimate::from_samples([1.0, 2.0, 3.0]);
        assert_eq!(e.mean, 2.0);
        assert!((e.se - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(Estimate::from_samples([1.0]).se.is_nan());
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }
}
