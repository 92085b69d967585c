//! Binomial rate estimates.

use serde::Serialize;

/// Wilson score interval for `k` successes in `n` trials at `z` standard deviations.
#[must_use]
pub fn wilson(k: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = k as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rate {
    pub failures: u64,
    pub shots: u64,
    pub rate: f64,
    /// 1σ Wilson interval.
    pub lo: f64,
    pub hi: f64,
}

impl Rate {
    #[must_use]
    pub fn new(failures: u64, shots: u64) -> Self {
        let (lo, hi) = wilson(failures, shots, 1.0);
        let rate = if shots == 0 { 0.0 } else { failures as f64 / shots as f64 };
        Self { failures, shots, rate, lo, hi }
    }

    /// Interval at `z` standard deviations.
    #[must_use]
    pub fn interval(&self, z: f64) -> (f64, f64) {
        wilson(self.failures, self.shots, z)
    }

    /// Converts a probability over `rounds` rounds to a per-round one.
    #[must_use]
    pub fn per_round(&self, rounds: usize) -> Self {
        let f = |p: f64| 1.0 - (1.0 - p).powf(1.0 / rounds as f64);
        Self { failures: self.failures, shots: self.shots, rate: f(self.rate), lo: f(self.lo), hi: f(self.hi) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_known_values() {
        // 10 of 100 at z = 1.96: (0.0552, 0.1744)
        let (lo, hi) = wilson(10, 100, 1.96);
        assert!((lo - 0.0552).abs() < 1e-4 && (hi - 0.1744).abs() < 1e-4);
        let (lo, hi) = wilson(0, 1000, 1.0);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.002);
    }
}
