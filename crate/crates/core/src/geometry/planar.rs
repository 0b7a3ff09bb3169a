//! Exact planar kernel: convex hulls, halfplane clipping and membership.
//!
//! Everything here works directly on vertex coordinates with orientation
//! predicates and the shoelace formula, so it serves as an independent check
//! on the LP layer in two dimensions.

use serde::{Deserialize, Serialize};

use super::HalfSpace;
use crate::{Error, Result};

pub type Point2 = [f64; 2];

#[inline]
pub fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    /// Validates strict convexity and counterclockwise orientation.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::Degenerate(format!(
                "polygon needs at least 3 vertices, got {n}"
            )));
        }
        if vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::invalid("polygon vertex is not finite"));
        }
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let scale = dist(a, b) * dist(b, c);
            if !(cross(a, b, c) > 1e-14 * scale) || scale == 0.0 {
                return Err(Error::Degenerate(format!(
                    "vertices {i}..{} are not a strict counterclockwise turn",
                    i + 2
                )));
            }
        }
        // a star-shaped winding (turning twice) also passes the local test
        let p = Self { vertices };
        let turning: f64 = (0..n)
            .map(|i| {
                let a = p.vertices[i];
                let b = p.vertices[(i + 1) % n];
                let c = p.vertices[(i + 2) % n];
                let e1 = [b[0] - a[0], b[1] - a[1]];
                let e2 = [c[0] - b[0], c[1] - b[1]];
                (e1[0] * e2[1] - e1[1] * e2[0]).atan2(e1[0] * e2[0] + e1[1] * e2[1])
            })
            .sum();
        if (turning - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(Error::Degenerate("polygon winds more than once".into()));
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        ring_area(&self.vertices)
    }

    pub fn centroid(&self) -> Point2 {
        ring_centroid(&self.vertices)
    }

    pub fn translate(&self, by: Point2) -> Polygon {
        Polygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| [v[0] + by[0], v[1] + by[1]])
                .collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Polygon {
        assert!(factor > 0.0);
        Polygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| [v[0] * factor, v[1] * factor])
                .collect(),
        }
    }

    /// Closed membership; `tol` is a distance to each edge line.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.edges()
            .all(|(a, b)| cross(a, b, p) / dist(a, b) >= -tol)
    }

    /// Vertices of `self ∩ h` in counterclockwise order (may be empty or degenerate).
    pub fn clip(&self, h: &HalfSpace) -> Vec<Point2> {
        assert_eq!(h.dim(), 2, "planar clipping needs a 2D halfspace");
        let u = h.normal();
        let value = |p: Point2| u[0] * p[0] + u[1] * p[1] - h.offset();
        let mut out = Vec::with_capacity(self.vertices.len() + 1);
        for (a, b) in self.edges() {
            let da = value(a);
            let db = value(b);
            if da >= 0.0 {
                out.push(a);
            }
            if (da >= 0.0) != (db >= 0.0) {
                let s = da / (da - db);
                out.push([a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]);
            }
        }
        out
    }

    pub fn clipped_area(&self, h: &HalfSpace) -> f64 {
        let ring = self.clip(h);
        if ring.len() < 3 {
            0.0
        } else {
            ring_area(&ring).max(0.0)
        }
    }

    /// `max <u, v>` over the vertices.
    pub fn support(&self, u: [f64; 2]) -> f64 {
        self.vertices
            .iter()
            .map(|v| u[0] * v[0] + u[1] * v[1])
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `area(poly ∩ f) / area(poly)`.
pub fn clip_fraction_exact_2d(poly: &Polygon, f: &HalfSpace) -> f64 {
    (poly.clipped_area(f) / poly.area()).clamp(0.0, 1.0)
}

/// Counterclockwise hull with collinear boundary points removed.
pub fn convex_hull_2d(points: &[Point2]) -> Result<Polygon> {
    if points.len() < 3 {
        return Err(Error::Degenerate(format!(
            "hull needs at least 3 points, got {}",
            points.len()
        )));
    }
    let vertices = monotone_chain(points);
    if vertices.len() < 3 {
        return Err(Error::Degenerate("all points are collinear".into()));
    }
    Polygon::new(vertices)
}

/// Andrew's monotone chain. Returns fewer than 3 points for collinear input.
pub fn monotone_chain(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Whether the convex hulls of two finite planar point sets are disjoint,
/// by brute-force projection onto every normal of a segment between input
/// points and every segment direction itself.
pub fn hulls_disjoint_2d(a: &[Point2], b: &[Point2], tol: f64) -> bool {
    let all: Vec<Point2> = a.iter().chain(b).copied().collect();
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            let d = [all[j][0] - all[i][0], all[j][1] - all[i][1]];
            let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
            if len == 0.0 {
                continue;
            }
            for axis in [[d[0] / len, d[1] / len], [-d[1] / len, d[0] / len]] {
                let proj = |s: &[Point2]| {
                    s.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                        let v = axis[0] * p[0] + axis[1] * p[1];
                        (lo.min(v), hi.max(v))
                    })
                };
                let (alo, ahi) = proj(a);
                let (blo, bhi) = proj(b);
                if ahi < blo - tol || bhi < alo - tol {
                    return true;
                }
            }
        }
    }
    false
}

/// Closed membership of `q` in the hull of `points`, including degenerate
/// (point or segment) hulls.
pub fn in_hull_2d(points: &[Point2], q: Point2, tol: f64) -> bool {
    let hull = monotone_chain(points);
    match hull.len() {
        0 => false,
        1 => dist(hull[0], q) <= tol,
        2 => point_segment_distance(q, hull[0], hull[1]) <= tol,
        _ => {
            let n = hull.len();
            (0..n).all(|i| {
                let a = hull[i];
                let b = hull[(i + 1) % n];
                cross(a, b, q) / dist(a, b) >= -tol
            })
        }
    }
}

/// Max over edges of the outward violation; negative inside.
pub fn hull_violation_2d(points: &[Point2], q: Point2) -> f64 {
    let hull = monotone_chain(points);
    match hull.len() {
        0 => f64::INFINITY,
        1 => dist(hull[0], q),
        2 => point_segment_distance(q, hull[0], hull[1]),
        n => (0..n)
            .map(|i| {
                let a = hull[i];
                let b = hull[(i + 1) % n];
                -cross(a, b, q) / dist(a, b)
            })
            .fold(f64::NEG_INFINITY, f64::max),
    }
}

fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let s = (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + s * ab[0], a[1] + s * ab[1]])
}

fn dist(a: Point2, b: Point2) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

fn ring_area(ring: &[Point2]) -> f64 {
    let n = ring.len();
    0.5 * (0..n)
        .map(|i| {
            let a = ring[i];
            let b = ring[(i + 1) % n];
            a[0] * b[1] - b[0] * a[1]
        })
        .sum::<f64>()
}

fn ring_centroid(ring: &[Point2]) -> Point2 {
    // shift to the first vertex to limit cancellation
    let o = ring[0];
    let n = ring.len();
    let (mut a2, mut cx, mut cy) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let p = [ring[i][0] - o[0], ring[i][1] - o[1]];
        let q = [ring[(i + 1) % n][0] - o[0], ring[(i + 1) % n][1] - o[1]];
        let w = p[0] * q[1] - q[0] * p[1];
        a2 += w;
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
    }
    [o[0] + cx / (3.0 * a2), o[1] + cy / (3.0 * a2)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polygon {
        Polygon::new(vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]).unwrap()
    }

    #[test]
    fn rejects_clockwise_and_collinear() {
        assert!(Polygon::new(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).is_err());
        assert!(Polygon::new(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [1.0, 1.0]]).is_err());
        assert!(Polygon::new(vec![[0.0, 0.0], [1.0, 0.0]]).is_err());
    }

    #[test]
    fn hull_of_square_plus_center() {
        let pts = [[-1.0, -1.0], [1.0, 1.0], [0.0, 0.0], [1.0, -1.0], [-1.0, 1.0]];
        let hull = convex_hull_2d(&pts).unwrap();
        assert_eq!(hull.len(), 4);
        assert_eq!(hull.area(), 4.0);
    }

    #[test]
    fn hull_of_triangle_is_itself() {
        let pts = [[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]];
        let hull = convex_hull_2d(&pts).unwrap();
        assert_eq!(hull.vertices(), &[[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn hull_drops_collinear_boundary_points() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0], [0.0, 1.0]];
        assert_eq!(convex_hull_2d(&pts).unwrap().len(), 4);
    }

    #[test]
    fn collinear_input_is_degenerate() {
        let pts = [[0.0, 0.0], [1.0, 1.0], [3.0, 3.0]];
        assert!(matches!(convex_hull_2d(&pts), Err(Error::Degenerate(_))));
    }

    #[test]
    fn square_half_clip() {
        let h = HalfSpace::new(vec![1.0, 0.0], 0.0).unwrap();
        assert_eq!(clip_fraction_exact_2d(&square(), &h), 0.5);
    }

    #[test]
    fn clip_containing_everything_and_nothing() {
        let all = HalfSpace::new(vec![0.0, 1.0], -5.0).unwrap();
        let none = HalfSpace::new(vec![0.0, 1.0], 5.0).unwrap();
        assert_eq!(clip_fraction_exact_2d(&square(), &all), 1.0);
        assert_eq!(clip_fraction_exact_2d(&square(), &none), 0.0);
    }

    #[test]
    fn triangle_centroid_cut_is_four_ninths() {
        let tri = Polygon::new(vec![[-1.0, -1.0], [2.0, -1.0], [-1.0, 2.0]]).unwrap();
        let c = tri.centroid();
        // centroid of a triangle is the vertex mean
        assert!((c[0] - 0.0).abs() < 1e-15 && (c[1] - 0.0).abs() < 1e-15);
        // line through the centroid parallel to the side y = -1, cap toward (-1, 2)
        let h = HalfSpace::new(vec![0.0, 1.0], 0.0).unwrap();
        assert!((clip_fraction_exact_2d(&tri, &h) - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn centroid_of_offset_square() {
        let c = square().translate([3.0, -2.0]).centroid();
        assert!((c[0] - 3.0).abs() < 1e-14 && (c[1] + 2.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_hull_membership() {
        assert!(in_hull_2d(&[[0.0, 0.0], [2.0, 0.0]], [1.0, 0.0], 1e-12));
        assert!(!in_hull_2d(&[[0.0, 0.0], [2.0, 0.0]], [1.0, 0.1], 1e-12));
        assert!(in_hull_2d(&[[1.0, 1.0]], [1.0, 1.0], 0.0));
    }

    #[test]
    fn disjoint_oracle_basic() {
        assert!(hulls_disjoint_2d(&[[0.0, 0.0]], &[[1.0, 0.0]], 0.0));
        assert!(!hulls_disjoint_2d(&[[0.0, 0.0], [2.0, 0.0]], &[[1.0, -1.0], [1.0, 1.0]], 0.0));
        assert!(hulls_disjoint_2d(&[[0.0, 0.0], [1.0, 0.0]], &[[2.0, 0.0], [3.0, 0.0]], 0.0));
    }
}
