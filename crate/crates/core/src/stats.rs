/// Normal quantile used for all intervals in the crate.
pub const Z_95: f64 = 1.96;

/// Wilson score interval for `successes` out of `trials`. `(0, 1)` when
/// there are no trials.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * libm::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_of_hundred() {
        let (lo, hi) = wilson_interval(0, 100, Z_95);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.036994).abs() < 1e-5, "{hi}");
    }

    #[test]
    fn symmetric_and_covers_estimate() {
        let (lo, hi) = wilson_interval(30, 100, Z_95);
        let (lo2, hi2) = wilson_interval(70, 100, Z_95);
        assert!((lo - (1.0 - hi2)).abs() < 1e-12 && (hi - (1.0 - lo2)).abs() < 1e-12);
        assert!(lo < 0.3 && 0.3 < hi);
        assert_eq!(wilson_interval(0, 0, Z_95), (0.0, 1.0));
    }
}
