use serde::{Deserialize, Serialize};

/// Single-pass count / mean / second central moment accumulator.
///
/// Uses Welford's recurrence for `push` and the Chan et al. pairwise update
/// for `merge`, so long runs of nearly equal values keep their variance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StreamingMoments {
    count: u64,
    mean: f64,
    m2: f64,
}

/// Which normalization the sample variance uses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum VarianceEstimator {
    /// Divide by τ.
    #[default]
    Biased,
    /// Divide by τ − 1.
    Unbiased,
}

impl StreamingMoments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_slice(xs: &[f64]) -> Self {
        let mut m = Self::new();
        m.extend(xs.iter().copied());
        m
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Returns the updated accumulator, leaving `self` untouched.
    pub fn update(mut self, x: f64) -> Self {
        self.push(x);
        self
    }

    pub fn extend(&mut self, xs: impl IntoIterator<Item = f64>) {
        for x in xs {
            self.push(x);
        }
    }

    /// Combines two accumulators as if their inputs had been fed in sequence.
    pub fn merge(&self, other: &StreamingMoments) -> StreamingMoments {
        if other.count == 0 {
            return *self;
        }
        if self.count == 0 {
            return *other;
        }
        let n_a = self.count as f64;
        let n_b = other.count as f64;
        let count = self.count + other.count;
        let n = count as f64;
        let delta = other.mean - self.mean;
        StreamingMoments {
            count,
            mean: self.mean + delta * (n_b / n),
            m2: self.m2 + other.m2 + delta * delta * (n_a * n_b / n),
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Un-normalized second central moment `Σ(x − x̄)²`.
    pub fn m2(&self) -> f64 {
        self.m2
    }

    pub fn mean(&self) -> Option<f64> {
        (self.count > 0).then_some(self.mean)
    }

    /// Biased sample variance `m2 / τ`.
    pub fn variance(&self) -> Option<f64> {
        (self.count > 0).then(|| self.m2 / self.count as f64)
    }

    pub fn unbiased_variance(&self) -> Option<f64> {
        (self.count > 1).then(|| self.m2 / (self.count - 1) as f64)
    }

    pub fn variance_with(&self, estimator: VarianceEstimator) -> Option<f64> {
        match estimator {
            VarianceEstimator::Biased => self.variance(),
            VarianceEstimator::Unbiased => self.unbiased_variance(),
        }
    }

    /// Sample mean-variance `σ̄² − ρ·μ̄` with the biased variance.
    pub fn sample_mean_variance(&self, rho: f64) -> Option<f64> {
        self.sample_mean_variance_with(rho, VarianceEstimator::Biased)
    }

    pub fn sample_mean_variance_with(&self, rho: f64, estimator: VarianceEstimator) -> Option<f64> {
        let var = self.variance_with(estimator)?;
        Some(var - rho * self.mean)
    }

    /// Standard error of the mean, `sqrt(s² / n)` with the unbiased `s²`.
    pub fn std_error(&self) -> Option<f64> {
        self.unbiased_variance()
            .map(|v| (v / self.count as f64).sqrt())
    }
}

impl FromIterator<f64> for StreamingMoments {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut m = StreamingMoments::new();
        m.extend(iter);
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_pass(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        (mean, var)
    }

    #[test]
    fn single_observation() {
        let m = StreamingMoments::new().update(5.0);
        assert_eq!(m.count(), 1);
        assert_eq!(m.mean(), Some(5.0));
        assert_eq!(m.variance(), Some(0.0));
        assert_eq!(m.unbiased_variance(), None);
    }

    #[test]
    fn constant_sequence() {
        let m = StreamingMoments::from_slice(&[1.0; 4]);
        assert_eq!(m.mean(), Some(1.0));
        assert_eq!(m.variance(), Some(0.0));
    }

    #[test]
    fn zero_one_mean_variance() {
        let m = StreamingMoments::from_slice(&[0.0, 1.0]);
        assert_eq!(m.variance(), Some(0.25));
        assert_eq!(m.sample_mean_variance(1.0), Some(-0.25));
        assert_eq!(m.unbiased_variance(), Some(0.5));
    }

    #[test]
    fn empty_queries_are_none() {
        let m = StreamingMoments::new();
        assert!(m.is_empty());
        assert_eq!(m.mean(), None);
        assert_eq!(m.variance(), None);
        assert_eq!(m.sample_mean_variance(1.0), None);
        assert_eq!(m.std_error(), None);
    }

    #[test]
    fn large_offset_does_not_cancel() {
        let xs: Vec<f64> = (0..1_000_000).map(|i| 1e9 + (i % 2) as f64).collect();
        let m = StreamingMoments::from_slice(&xs);
        assert!((m.variance().unwrap() - 0.25).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn matches_two_pass(xs in prop::collection::vec(-1e3f64..1e3, 1..300)) {
            let m = StreamingMoments::from_slice(&xs);
            let (mean, var) = two_pass(&xs);
            prop_assert!((m.mean().unwrap() - mean).abs() <= 1e-10 * mean.abs().max(1.0));
            prop_assert!((m.variance().unwrap() - var).abs() <= 1e-10 * var.max(1.0));
            prop_assert!(m.m2() >= 0.0);
        }

        #[test]
        fn merge_equals_sequential(xs in prop::collection::vec(-1e3f64..1e3, 0..200),
                                   ys in prop::collection::vec(-1e3f64..1e3, 0..200)) {
            let seq = StreamingMoments::from_slice(&[xs.clone(), ys.clone()].concat());
            let merged = StreamingMoments::from_slice(&xs).merge(&StreamingMoments::from_slice(&ys));
            prop_assert_eq!(seq.count(), merged.count());
            if let (Some(a), Some(b)) = (seq.variance(), merged.variance()) {
                prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0));
                prop_assert!((seq.mean().unwrap() - merged.mean().unwrap()).abs() <= 1e-10 * a.max(1.0).max(seq.mean().unwrap().abs()));
            }
        }

        #[test]
        fn mean_variance_identity(xs in prop::collection::vec(-10f64..10.0, 1..50), rho in 0f64..5.0) {
            let m = StreamingMoments::from_slice(&xs);
            let direct = m.variance().unwrap() - rho * m.mean().unwrap();
            prop_assert_eq!(m.sample_mean_variance(rho).unwrap().to_bits(), direct.to_bits());
        }
    }
}
