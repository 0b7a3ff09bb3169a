//! Binomial confidence intervals.

/// Two-sided 99% normal quantile.
pub const Z_99: f64 = 2.576;

/// Wilson score interval for `successes` out of `n`, clamped to [0, 1].
/// Returns `(low, high)`; `n == 0` yields the uninformative `(0, 1)`.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n_f = n as f64;
    let p = successes as f64 / n_f;
    let z2 = z * z;
    let denom = 1.0 + z2 / n_f;
    let center = p + z2 / (2.0 * n_f);
    let half = z * (p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)).sqrt();
    let low = ((center - half) / denom).clamp(0.0, 1.0);
    let high = ((center + half) / denom).clamp(0.0, 1.0);
    // rounding can push the bounds past p at the extremes
    (low.min(p), high.max(p))
}
