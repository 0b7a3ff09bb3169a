use serde::{Deserialize, Serialize};

use crate::geometry::{dot, ConvexBody, HalfSpace, DEFAULT_TOL};
use crate::lp::point_in_hull;
use crate::rng::{Stream, StreamId};
use crate::{Error, Result};

/// Sampled points together with the stream that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSample {
    pub points: Vec<Vec<f64>>,
    pub stream: StreamId,
}

/// Result of testing `θK ⊆ conv(sample)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub success: bool,
    /// A vertex of `θK` outside the sample hull.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violated_vertex: Option<Vec<f64>>,
    /// A halfspace supporting `θK` from outside whose cap holds no sample point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_cap: Option<HalfSpace>,
}

impl TrialOutcome {
    fn success() -> Self {
        Self {
            success: true,
            violated_vertex: None,
            witness_cap: None,
        }
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::invalid(format!("theta must lie in (0,1), got {theta}")));
    }
    Ok(())
}

/// `θK ⊆ conv(sample)` iff every scaled vertex `θv` lies in the hull.
pub fn containment_check(body: &ConvexBody, theta: f64, sample: &PointSample) -> Result<TrialOutcome> {
    if !body.is_polytopal() {
        return Err(Error::UnsupportedBody(format!(
            "{body} has no vertex list; containment needs a polytope"
        )));
    }
    let vertices = body.vertices()?;
    check_with_vertices(body, &vertices, theta, &sample.points)
}

fn check_with_vertices(
    body: &ConvexBody,
    vertices: &[Vec<f64>],
    theta: f64,
    points: &[Vec<f64>],
) -> Result<TrialOutcome> {
    check_theta(theta)?;
    if points.is_empty() {
        return Err(Error::invalid("sample is empty"));
    }
    for v in vertices {
        let q: Vec<f64> = v.iter().map(|x| theta * x).collect();
        let cert = point_in_hull(points, &q, DEFAULT_TOL)?;
        if cert.is_inside() {
            continue;
        }
        let sep = cert.separator.expect("outside certificate carries a separator");
        // push the separating hyperplane out until it supports θK
        let level = theta * body.support_function(sep.normal())?;
        let cap = sep.with_offset(level);
        if let Some(bad) = points.iter().find(|p| dot(cap.normal(), p) >= level) {
            return Err(Error::Numerical(format!("witness cap holds sample point {bad:?}")));
        }
        return Ok(TrialOutcome {
            success: false,
            violated_vertex: Some(q),
            witness_cap: Some(cap),
        });
    }
    Ok(TrialOutcome::success())
}

/// `t` independent uniform points from `body`.
pub fn draw_sample(body: &ConvexBody, t: usize, stream: &mut Stream) -> PointSample {
    let address = stream.address();
    PointSample {
        points: body.sample_many(stream, t),
        stream: address,
    }
}

/// Draws `t` points and tests the containment; also re-checks `sample ⊆ K`.
pub fn run_trial(body: &ConvexBody, theta: f64, t: usize, stream: &mut Stream) -> Result<TrialOutcome> {
    run_trial_with_sample(body, theta, t, stream).map(|(_, o)| o)
}

pub fn run_trial_with_sample(
    body: &ConvexBody,
    theta: f64,
    t: usize,
    stream: &mut Stream,
) -> Result<(PointSample, TrialOutcome)> {
    if t == 0 {
        return Err(Error::invalid("t must be positive"));
    }
    if !body.is_polytopal() {
        return Err(Error::UnsupportedBody(format!("{body} is not a polytope")));
    }
    check_theta(theta)?;
    let vertices = body.vertices()?;
    let sample = draw_sample(body, t, stream);
    trial_on_sample(body, &vertices, theta, sample)
}

pub(crate) fn trial_on_sample(
    body: &ConvexBody,
    vertices: &[Vec<f64>],
    theta: f64,
    sample: PointSample,
) -> Result<(PointSample, TrialOutcome)> {
    for p in &sample.points {
        if !body.contains_point(p, DEFAULT_TOL)? {
            return Err(Error::Numerical(format!("sampled point {p:?} lies outside {body}")));
        }
    }
    let outcome = check_with_vertices(body, vertices, theta, &sample.points)?;
    Ok((sample, outcome))
}
