use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::epsnet::epsilon_lower_bound;
use crate::geometry::{cap_fraction_mc, clip_fraction_exact_2d, ConvexBody, HalfSpace};
use crate::rng::Stream;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditMode {
    Exact,
    MonteCarlo,
}

/// Relative volume of one cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapMeasure {
    pub fraction: f64,
    /// Equal to `fraction` in exact mode.
    pub ci_high: f64,
    pub mode: AuditMode,
}

/// Exact clipping for planar polytopes, Monte Carlo with `n_mc` samples otherwise.
pub fn measure_cap(body: &ConvexBody, h: &HalfSpace, n_mc: u64, stream: &mut Stream) -> Result<CapMeasure> {
    match body.as_polygon() {
        Some(poly) => {
            let f = clip_fraction_exact_2d(&poly, h);
            Ok(CapMeasure {
                fraction: f,
                ci_high: f,
                mode: AuditMode::Exact,
            })
        }
        None => {
            let est = cap_fraction_mc(body, h, n_mc, stream)?;
            Ok(CapMeasure {
                fraction: est.fraction,
                ci_high: est.ci_high,
                mode: AuditMode::MonteCarlo,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrunbaumAudit {
    pub theta: f64,
    pub dim: usize,
    pub mode: AuditMode,
    pub n_directions: usize,
    /// `(1-θ)^d / e`; `1/e` at `θ = 0`.
    pub floor: f64,
    pub min_fraction: f64,
    pub min_direction: Vec<f64>,
    pub violations: usize,
}

/// Measures the caps beyond `θK` in `n_directions` random directions.
///
/// `θ = 0` audits the halfspaces whose boundary passes through the centroid.
/// In Monte Carlo mode only a cap whose upper confidence bound falls below
/// the floor counts as a violation.
pub fn grunbaum_audit(
    body: &ConvexBody,
    theta: f64,
    n_directions: usize,
    n_mc: u64,
    stream: &mut Stream,
) -> Result<GrunbaumAudit> {
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::invalid(format!("theta must lie in [0,1), got {theta}")));
    }
    if n_directions == 0 {
        return Err(Error::invalid("need at least one direction"));
    }
    let d = body.dim();
    let floor = if theta == 0.0 {
        (-1.0f64).exp()
    } else {
        epsilon_lower_bound(d, theta)?
    };
    let mut directions = stream.substream(0);
    let mut mode = AuditMode::Exact;
    let mut min_fraction = f64::INFINITY;
    let mut min_direction = Vec::new();
    let mut violations = 0;
    for i in 0..n_directions {
        let u = random_unit(&mut directions, d);
        let h = cap_halfspace(body, &u, theta)?;
        let m = measure_cap(body, &h, n_mc, &mut stream.substream(1 + i as u64))?;
        mode = m.mode;
        let violated = match m.mode {
            AuditMode::Exact => m.fraction < floor,
            AuditMode::MonteCarlo => m.ci_high < floor,
        };
        if violated {
            violations += 1;
        }
        if m.fraction < min_fraction {
            min_fraction = m.fraction;
            min_direction = u;
        }
    }
    Ok(GrunbaumAudit {
        theta,
        dim: d,
        mode,
        n_directions,
        floor,
        min_fraction,
        min_direction,
        violations,
    })
}

/// Supporting halfspace of `θK`, or the centroid halfspace at `θ = 0`.
pub(crate) fn cap_halfspace(body: &ConvexBody, u: &[f64], theta: f64) -> Result<HalfSpace> {
    if theta == 0.0 {
        body.support_function(u)?;
        HalfSpace::new(u.to_vec(), 0.0)
    } else {
        body.supporting_halfspace(u, theta)
    }
}

pub(crate) fn random_unit(stream: &mut Stream, d: usize) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..d).map(|_| StandardNormal.sample(stream)).collect();
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return g.iter().map(|x| x / n).collect();
        }
    }
}
