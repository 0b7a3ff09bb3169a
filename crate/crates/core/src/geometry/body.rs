use std::fmt;

use serde::{Deserialize, Serialize};

use super::planar::{Point2, Polygon};
use super::{check_unit, norm, HalfSpace};
use crate::{Error, Result};

/// Largest dimension for which cube vertices are enumerated.
pub const MAX_CUBE_VERTEX_DIM: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyKind {
    /// `[-s/2, s/2]^d` for side length `s`.
    Cube,
    /// Simplex with vertices `s (e_i - 1/(d+1))` and `-s/(d+1) (1,…,1)`.
    #[serde(alias = "simplex")]
    CenteredSimplex,
    /// `{x : |x|_1 <= r}`.
    #[serde(alias = "cross")]
    CrossPolytope,
    /// Euclidean ball of radius `r`.
    Ball,
    /// Strictly convex polygon, recentered at construction.
    #[serde(alias = "polygon")]
    Polygon2d,
}

impl BodyKind {
    pub fn name(&self) -> &'static str {
        match self {
            BodyKind::Cube => "cube",
            BodyKind::CenteredSimplex => "centered_simplex",
            BodyKind::CrossPolytope => "cross_polytope",
            BodyKind::Ball => "ball",
            BodyKind::Polygon2d => "polygon2d",
        }
    }

    pub fn is_polytopal(&self) -> bool {
        !matches!(self, BodyKind::Ball)
    }
}

impl fmt::Display for BodyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BodyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "cube" => Ok(BodyKind::Cube),
            "simplex" | "centered_simplex" | "triangle" => Ok(BodyKind::CenteredSimplex),
            "cross" | "cross_polytope" => Ok(BodyKind::CrossPolytope),
            "ball" => Ok(BodyKind::Ball),
            "polygon" | "polygon2d" => Ok(BodyKind::Polygon2d),
            other => Err(Error::invalid(format!("unknown body kind '{other}'"))),
        }
    }
}

/// Serialized body description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodySpec {
    pub kind: BodyKind,
    pub dim: usize,
    #[serde(default = "default_scale")]
    pub scale: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
}

fn default_scale() -> f64 {
    1.0
}

/// A centered convex body from the catalog.
///
/// Every constructor yields a body whose centroid is the origin; polygons
/// are translated by their exact centroid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodySpec", into = "BodySpec")]
pub struct ConvexBody {
    kind: BodyKind,
    dim: usize,
    scale: f64,
    polygon: Option<Polygon>,
}

impl ConvexBody {
    pub fn cube(dim: usize, side: f64) -> Result<Self> {
        Self::catalog(BodyKind::Cube, dim, side)
    }

    pub fn simplex(dim: usize, scale: f64) -> Result<Self> {
        Self::catalog(BodyKind::CenteredSimplex, dim, scale)
    }

    pub fn cross_polytope(dim: usize, radius: f64) -> Result<Self> {
        Self::catalog(BodyKind::CrossPolytope, dim, radius)
    }

    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        Self::catalog(BodyKind::Ball, dim, radius)
    }

    pub fn catalog(kind: BodyKind, dim: usize, scale: f64) -> Result<Self> {
        if kind == BodyKind::Polygon2d {
            return Err(Error::invalid("polygons need a vertex list"));
        }
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::invalid(format!("scale must be positive, got {scale}")));
        }
        Ok(Self {
            kind,
            dim,
            scale,
            polygon: None,
        })
    }

    /// Polygon from strictly convex counterclockwise vertices, recentered.
    pub fn polygon(vertices: Vec<Point2>) -> Result<Self> {
        let poly = Polygon::new(vertices)?;
        let c = poly.centroid();
        let centered = poly.translate([-c[0], -c[1]]);
        Ok(Self {
            kind: BodyKind::Polygon2d,
            dim: 2,
            scale: 1.0,
            polygon: Some(centered),
        })
    }

    pub fn from_spec(spec: &BodySpec) -> Result<Self> {
        match spec.kind {
            BodyKind::Polygon2d => {
                if spec.dim != 2 {
                    return Err(Error::invalid("polygon2d bodies have dim 2"));
                }
                let raw = spec
                    .vertices
                    .as_ref()
                    .ok_or_else(|| Error::invalid("polygon2d needs 'vertices'"))?;
                let s = spec.scale;
                if !(s.is_finite() && s > 0.0) {
                    return Err(Error::invalid("scale must be positive"));
                }
                let pts = raw
                    .iter()
                    .map(|v| match v.as_slice() {
                        [x, y] => Ok([x * s, y * s]),
                        _ => Err(Error::invalid("polygon vertices must be 2D")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::polygon(pts)
            }
            kind => {
                if spec.vertices.is_some() {
                    return Err(Error::invalid(format!(
                        "{kind} bodies are fully determined by dim and scale"
                    )));
                }
                Self::catalog(kind, spec.dim, spec.scale)
            }
        }
    }

    pub fn to_spec(&self) -> BodySpec {
        BodySpec {
            kind: self.kind,
            dim: self.dim,
            scale: self.scale,
            vertices: self.polygon.as_ref().map(|p| {
                p.vertices().iter().map(|v| v.to_vec()).collect()
            }),
        }
    }

    pub fn kind(&self) -> BodyKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn is_polytopal(&self) -> bool {
        self.kind.is_polytopal()
    }

    /// The body as an exact planar polygon when it is a 2D polytope.
    pub fn as_polygon(&self) -> Option<Polygon> {
        if self.dim != 2 || !self.is_polytopal() {
            return None;
        }
        if let Some(p) = &self.polygon {
            return Some(p.clone());
        }
        let verts = self.vertices().ok()?;
        let mut pts: Vec<Point2> = verts.iter().map(|v| [v[0], v[1]]).collect();
        // catalog vertex order is not angular
        pts.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
        Polygon::new(pts).ok()
    }

    /// Vertex list for polytopal bodies.
    pub fn vertices(&self) -> Result<Vec<Vec<f64>>> {
        let d = self.dim;
        let s = self.scale;
        match self.kind {
            BodyKind::Cube => {
                if d > MAX_CUBE_VERTEX_DIM {
                    return Err(Error::Range(format!(
                        "cube in dimension {d} has too many vertices to enumerate"
                    )));
                }
                let h = s / 2.0;
                Ok((0u64..(1 << d))
                    .map(|mask| {
                        (0..d)
                            .map(|i| if mask >> i & 1 == 1 { h } else { -h })
                            .collect()
                    })
                    .collect())
            }
            BodyKind::CenteredSimplex => {
                let shift = s / (d as f64 + 1.0);
                let mut out: Vec<Vec<f64>> = (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|k| if k == i { s - shift } else { -shift })
                            .collect()
                    })
                    .collect();
                out.push(vec![-shift; d]);
                Ok(out)
            }
            BodyKind::CrossPolytope => Ok((0..2 * d)
                .map(|j| {
                    let mut v = vec![0.0; d];
                    v[j / 2] = if j % 2 == 0 { s } else { -s };
                    v
                })
                .collect()),
            BodyKind::Polygon2d => Ok(self
                .polygon
                .as_ref()
                .expect("polygon body without polygon")
                .vertices()
                .iter()
                .map(|v| v.to_vec())
                .collect()),
            BodyKind::Ball => Err(Error::UnsupportedBody(
                "the ball has no vertex representation".into(),
            )),
        }
    }

    /// `h(u) = max <u, x>` over the body.
    pub fn support_function(&self, u: &[f64]) -> Result<f64> {
        self.check_dim(u)?;
        check_unit(u)?;
        let s = self.scale;
        Ok(match self.kind {
            BodyKind::Cube => 0.5 * s * u.iter().map(|x| x.abs()).sum::<f64>(),
            BodyKind::Ball => s,
            BodyKind::CrossPolytope => s * u.iter().fold(0.0f64, |m, x| m.max(x.abs())),
            BodyKind::CenteredSimplex => {
                let sum: f64 = u.iter().sum();
                let top = u.iter().fold(0.0f64, |m, &x| m.max(x));
                s * (top - sum / (self.dim as f64 + 1.0))
            }
            BodyKind::Polygon2d => self.polygon.as_ref().unwrap().support([u[0], u[1]]),
        })
    }

    /// `{x : <u, x> >= theta h(u)}`, which supports `theta K` from outside.
    pub fn supporting_halfspace(&self, u: &[f64], theta: f64) -> Result<HalfSpace> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::invalid(format!("theta must lie in (0,1), got {theta}")));
        }
        let h = self.support_function(u)?;
        HalfSpace::new(u.to_vec(), theta * h)
    }

    pub fn centroid(&self) -> Vec<f64> {
        match &self.polygon {
            Some(p) => p.centroid().to_vec(),
            None => vec![0.0; self.dim],
        }
    }

    pub fn volume(&self) -> f64 {
        let d = self.dim;
        let s = self.scale;
        match self.kind {
            BodyKind::Cube => s.powi(d as i32),
            BodyKind::CenteredSimplex => s.powi(d as i32) / factorial(d),
            BodyKind::CrossPolytope => (2.0 * s).powi(d as i32) / factorial(d),
            BodyKind::Ball => unit_ball_volume(d) * s.powi(d as i32),
            BodyKind::Polygon2d => self.polygon.as_ref().unwrap().area(),
        }
    }

    /// Minkowski gauge: the smallest `λ >= 0` with `x ∈ λ K`.
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        let s = self.scale;
        Ok(match self.kind {
            BodyKind::Cube => x.iter().fold(0.0f64, |m, v| m.max(v.abs())) / (0.5 * s),
            BodyKind::Ball => norm(x) / s,
            BodyKind::CrossPolytope => x.iter().map(|v| v.abs()).sum::<f64>() / s,
            BodyKind::CenteredSimplex => {
                // facets x_i >= -s/(d+1) and sum(x) <= s/(d+1)
                let k = (self.dim as f64 + 1.0) / s;
                let low = x.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(-v));
                let sum: f64 = x.iter().sum();
                (k * low.max(sum)).max(0.0)
            }
            BodyKind::Polygon2d => {
                let p = self.polygon.as_ref().unwrap();
                p.edges()
                    .map(|(a, b)| {
                        // outward normal (b - a) rotated clockwise, offset > 0 for centered bodies
                        let n = [b[1] - a[1], a[0] - b[0]];
                        let offset = n[0] * a[0] + n[1] * a[1];
                        (n[0] * x[0] + n[1] * x[1]) / offset
                    })
                    .fold(0.0f64, f64::max)
            }
        })
    }

    /// Closed membership with relative tolerance: `gauge(p) <= 1 + tol`.
    pub fn contains_point(&self, p: &[f64], tol: f64) -> Result<bool> {
        Ok(self.gauge(p)? <= 1.0 + tol)
    }

    pub(crate) fn polygon_ref(&self) -> Option<&Polygon> {
        self.polygon.as_ref()
    }

    pub(crate) fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::invalid(format!(
                "expected a {}-dimensional vector, got {}",
                self.dim,
                x.len()
            )));
        }
        Ok(())
    }

    pub fn is_centered(&self, tol: f64) -> bool {
        self.centroid().iter().all(|c| c.abs() <= tol)
    }
}

impl TryFrom<BodySpec> for ConvexBody {
    type Error = Error;

    fn try_from(spec: BodySpec) -> Result<Self> {
        ConvexBody::from_spec(&spec)
    }
}

impl From<ConvexBody> for BodySpec {
    fn from(b: ConvexBody) -> Self {
        b.to_spec()
    }
}

impl fmt::Display for ConvexBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BodyKind::Polygon2d => write!(f, "polygon2d[{}]", self.polygon.as_ref().unwrap().len()),
            k => write!(f, "{k}(d={}, scale={})", self.dim, self.scale),
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn unit_ball_volume(d: usize) -> f64 {
    // V_d = V_{d-2} * 2π / d
    let (mut even, mut odd) = (1.0, 2.0);
    let mut k = if d.is_multiple_of(2) { 0 } else { 1 };
    while k < d {
        k += 2;
        if d.is_multiple_of(2) {
            even *= std::f64::consts::TAU / k as f64;
        } else {
            odd *= std::f64::consts::TAU / k as f64;
        }
    }
    if d.is_multiple_of(2) {
        even
    } else {
        odd
    }
}
