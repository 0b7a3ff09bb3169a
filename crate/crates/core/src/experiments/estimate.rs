use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::trial::{draw_sample, trial_on_sample};
use crate::epsnet::NetBound;
use crate::geometry::ConvexBody;
use crate::rng::Stream;
use crate::stats::{wilson_interval, Z_99};
use crate::{Error, Result};

pub const MIN_TRIALS: u64 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuccessEstimate {
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub seed: u64,
}

impl SuccessEstimate {
    pub fn from_counts(successes: u64, trials: u64, seed: u64) -> Self {
        let (wilson_low, wilson_high) = wilson_interval(successes, trials, Z_99);
        Self {
            trials,
            successes,
            p_hat: successes as f64 / trials as f64,
            wilson_low,
            wilson_high,
            seed,
        }
    }
}

/// Runs `f` on a dedicated rayon pool with `threads` workers.
pub fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::invalid(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Success rate of `θK ⊆ conv(X_1..X_t)` over `n_trials` trials; trial `i`
/// draws from stream `(seed, i)`, so the result does not depend on scheduling.
pub fn estimate_success_probability(
    body: &ConvexBody,
    theta: f64,
    t: usize,
    n_trials: u64,
    seed: u64,
) -> Result<SuccessEstimate> {
    if n_trials < MIN_TRIALS {
        return Err(Error::invalid(format!(
            "need at least {MIN_TRIALS} trials, got {n_trials}"
        )));
    }
    if t == 0 {
        return Err(Error::invalid("t must be positive"));
    }
    if !body.is_polytopal() {
        return Err(Error::UnsupportedBody(format!("{body} is not a polytope")));
    }
    let vertices = body.vertices()?;
    let results: Vec<bool> = (0..n_trials)
        .into_par_iter()
        .map(|i| {
            let mut stream = Stream::new(seed, i);
            let sample = draw_sample(body, t, &mut stream);
            trial_on_sample(body, &vertices, theta, sample).map(|(_, o)| o.success)
        })
        .collect::<Result<_>>()?;
    let successes = results.iter().filter(|&&s| s).count() as u64;
    Ok(SuccessEstimate::from_counts(successes, n_trials, seed))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinTReport {
    pub t_bound: u64,
    pub t_empirical: u64,
    /// `t_bound / t_empirical`.
    pub ratio: f64,
    /// False when even `t_bound` misses the target; `t_empirical` is then `t_bound`.
    pub reachable: bool,
    pub trace: Vec<(u64, SuccessEstimate)>,
}

/// Smallest `t` in `[d+1, t_bound]` whose estimated success rate reaches
/// `target_p`, by binary search. `t_bound` uses `δ = 1 - target_p` and the
/// minimal admissible constant.
pub fn empirical_min_t(
    body: &ConvexBody,
    theta: f64,
    target_p: f64,
    n_trials: u64,
    seed: u64,
) -> Result<MinTReport> {
    if !(target_p > 0.0 && target_p < 1.0) {
        return Err(Error::invalid(format!("target probability must lie in (0,1), got {target_p}")));
    }
    let bound = NetBound::auto(body.dim(), theta, 1.0 - target_p)?;
    let t_bound = bound.t;
    let mut trace = Vec::new();
    let mut eval = |t: u64| -> Result<bool> {
        let est = estimate_success_probability(body, theta, t as usize, n_trials, seed)?;
        trace.push((t, est));
        Ok(est.p_hat >= target_p)
    };
    if !eval(t_bound)? {
        return Ok(MinTReport {
            t_bound,
            t_empirical: t_bound,
            ratio: 1.0,
            reachable: false,
            trace,
        });
    }
    let mut lo = (body.dim() + 1) as u64;
    let mut hi = t_bound;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if eval(mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    trace.sort_by_key(|(t, _)| *t);
    Ok(MinTReport {
        t_bound,
        t_empirical: hi,
        ratio: t_bound as f64 / hi as f64,
        reachable: true,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn too_few_trials() {
        let cube = ConvexBody::cube(2, 2.0).unwrap();
        assert!(estimate_success_probability(&cube, 0.5, 10, 29, 0).is_err());
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let body = ConvexBody::simplex(2, 1.0).unwrap();
        let a = in_pool(1, || estimate_success_probability(&body, 0.5, 25, 200, 9)).unwrap().unwrap();
        let b = in_pool(4, || estimate_success_probability(&body, 0.5, 25, 200, 9)).unwrap().unwrap();
        assert_eq!(a, b);
        assert!(a.wilson_low <= a.p_hat && a.p_hat <= a.wilson_high);
        assert_eq!(a.p_hat, a.successes as f64 / a.trials as f64);
    }

    #[test]
    fn min_t_is_below_bound() {
        let square = ConvexBody::cube(2, 2.0).unwrap();
        let r = empirical_min_t(&square, 0.25, 0.9, 200, 3).unwrap();
        assert!(r.reachable);
        assert!(r.ratio >= 1.0);
        assert!(r.t_empirical >= 3 && r.t_empirical <= r.t_bound);
    }
}
