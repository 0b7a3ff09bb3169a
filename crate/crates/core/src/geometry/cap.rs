use serde::{Deserialize, Serialize};

use super::{ConvexBody, HalfSpace};
use crate::rng::Stream;
use crate::stats::{wilson_interval, Z_99};
use crate::{Error, Result};

/// Monte Carlo estimate of `vol(K ∩ F) / vol(K)` with a 99% Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapEstimate {
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n: u64,
}

pub const MIN_CAP_SAMPLES: u64 = 100;

pub fn cap_fraction_mc(body: &ConvexBody, f: &HalfSpace, n: u64, stream: &mut Stream) -> Result<CapEstimate> {
    if n < MIN_CAP_SAMPLES {
        return Err(Error::invalid(format!(
            "cap estimate needs at least {MIN_CAP_SAMPLES} samples, got {n}"
        )));
    }
    if f.dim() != body.dim() {
        return Err(Error::invalid("halfspace and body dimensions differ"));
    }
    let hits = (0..n)
        .filter(|_| f.contains(&body.sample_uniform(stream), 0.0))
        .count() as u64;
    let (ci_low, ci_high) = wilson_interval(hits, n, Z_99);
    Ok(CapEstimate {
        fraction: hits as f64 / n as f64,
        ci_low,
        ci_high,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_half_space() {
        let ball = ConvexBody::ball(3, 1.0).unwrap();
        let h = HalfSpace::new(vec![0.0, 0.0, 1.0], 0.0).unwrap();
        let est = cap_fraction_mc(&ball, &h, 100_000, &mut Stream::new(1, 0)).unwrap();
        assert!(est.ci_low <= 0.5 && 0.5 <= est.ci_high, "{est:?}");
    }

    #[test]
    fn cube_quarter() {
        let cube = ConvexBody::cube(4, 2.0).unwrap();
        let h = HalfSpace::new(vec![1.0, 0.0, 0.0, 0.0], 0.5).unwrap();
        let est = cap_fraction_mc(&cube, &h, 100_000, &mut Stream::new(2, 0)).unwrap();
        assert!(est.ci_low <= 0.25 && 0.25 <= est.ci_high, "{est:?}");
        assert!(est.ci_low <= est.fraction && est.fraction <= est.ci_high);
    }

    #[test]
    fn too_few_samples() {
        let cube = ConvexBody::cube(2, 2.0).unwrap();
        let h = HalfSpace::new(vec![1.0, 0.0], 0.0).unwrap();
        assert!(cap_fraction_mc(&cube, &h, 99, &mut Stream::new(0, 0)).is_err());
    }
}
