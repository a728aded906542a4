use serde::Serialize;
use serde_json::Value;

use super::Moments;

/// A Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub metric: String,
    pub estimate: f64,
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
    /// Echo of the simulated configuration.
    pub config: Value,
}

impl SimReport {
    /// Proportion estimate; `successes` counts the trials where the event occurred.
    pub(crate) fn proportion(metric: &str, successes: f64, trials: u64, seed: u64, config: Value) -> Self {
        let n = trials as f64;
        let p = successes / n;
        SimReport {
            metric: metric.to_owned(),
            estimate: p,
            std_error: (p * (1.0 - p) / n).sqrt(),
            trials,
            seed,
            config,
        }
    }

    /// Sample mean with standard error `s / sqrt(trials)`, `s` the sample
    /// standard deviation.
    pub(crate) fn mean(metric: &str, m: Moments, trials: u64, seed: u64, config: Value) -> Self {
        let n = trials as f64;
        let mean = m.sum / n;
        let var = ((m.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        SimReport { metric: metric.to_owned(), estimate: mean, std_error: (var / n).sqrt(), trials, seed, config }
    }

    /// Number of combined standard errors separating the estimate from `value`,
    /// where `value` carries its own standard error `other_se`.
    pub fn z_score(&self, value: f64, other_se: f64) -> f64 {
        let se = self.std_error.hypot(other_se);
        let gap = (self.estimate - value).abs();
        if se == 0.0 {
            if gap == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            gap / se
        }
    }
}
