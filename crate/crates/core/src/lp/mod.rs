//! Point-in-hull and hull-disjointness tests with certificates.
//!
//! Both questions are phase-1 feasibility problems. A feasible answer comes
//! with convex weights; an infeasible one yields a Farkas ray that is turned
//! into a unit-normal separating halfspace. Every certificate is re-checked
//! against the raw input before it is returned.

mod simplex;

use serde::{Deserialize, Serialize};

pub use simplex::{phase_one, Phase1};

use crate::geometry::{dot, HalfSpace};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Inside,
    Outside,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullCertificate {
    pub verdict: Verdict,
    /// Convex combination coefficients over the input points (Inside only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<f64>,
    /// `{x : <u, x> >= c}` holding the query, with every input point at or
    /// below `c` (Outside only). `c` is the max over points of `<u, x_i>`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separator: Option<HalfSpace>,
}

impl HullCertificate {
    pub fn is_inside(&self) -> bool {
        self.verdict == Verdict::Inside
    }

    /// Re-checks the certificate against the input it was issued for.
    pub fn verify(&self, points: &[Vec<f64>], q: &[f64]) -> Result<()> {
        let scale = input_scale(points, q).max(1.0);
        match self.verdict {
            Verdict::Inside => {
                if self.weights.len() != points.len() {
                    return Err(Error::Numerical("weight count mismatch".into()));
                }
                if self.weights.iter().any(|&w| w < -1e-12) {
                    return Err(Error::Numerical("negative convex weight".into()));
                }
                let sum: f64 = self.weights.iter().sum();
                if (sum - 1.0).abs() > 1e-9 {
                    return Err(Error::Numerical(format!("weights sum to {sum}")));
                }
                for (k, &qk) in q.iter().enumerate() {
                    let v: f64 = self.weights.iter().zip(points).map(|(w, p)| w * p[k]).sum();
                    if (v - qk).abs() > 1e-7 * scale {
                        return Err(Error::Numerical(format!(
                            "weights reproduce coordinate {k} as {v}, expected {qk}"
                        )));
                    }
                }
                Ok(())
            }
            Verdict::Outside => {
                let sep = self
                    .separator
                    .as_ref()
                    .ok_or_else(|| Error::Numerical("outside verdict without separator".into()))?;
                if sep.signed_distance(q) <= 1e-12 * scale {
                    return Err(Error::Numerical("separator does not strictly hold the query".into()));
                }
                if points.iter().any(|p| sep.signed_distance(p) > 1e-9 * scale) {
                    return Err(Error::Numerical("separator cuts an input point".into()));
                }
                Ok(())
            }
        }
    }
}

/// Closed convex-hull membership of `q` in `conv(points)`.
pub fn point_in_hull(points: &[Vec<f64>], q: &[f64], tol: f64) -> Result<HullCertificate> {
    if points.is_empty() {
        return Err(Error::invalid("point_in_hull needs at least one point"));
    }
    check_tol(tol)?;
    let d = q.len();
    check_dims(points, d)?;
    let s = scale_or_one(input_scale(points, q));

    let columns: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().map(|x| x / s).chain([1.0]).collect())
        .collect();
    let rhs: Vec<f64> = q.iter().map(|x| x / s).chain([1.0]).collect();

    let cert = match phase_one(&columns, &rhs, tol)? {
        Phase1::Feasible { x, .. } => {
            let sum: f64 = x.iter().sum();
            HullCertificate {
                verdict: Verdict::Inside,
                weights: x.iter().map(|w| w / sum).collect(),
                separator: None,
            }
        }
        Phase1::Infeasible { y, .. } => {
            let w = project_onto_span(&y[..d], points.iter().map(Vec::as_slice).chain([q]));
            let sep = HalfSpace::from_raw(&w, 0.0)?;
            let c = points
                .iter()
                .map(|p| dot(sep.normal(), p))
                .fold(f64::NEG_INFINITY, f64::max);
            HullCertificate {
                verdict: Verdict::Outside,
                weights: Vec::new(),
                separator: Some(sep.with_offset(c)),
            }
        }
    };
    cert.verify(points, q)?;
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Disjointness {
    pub disjoint: bool,
    /// `{x : <u, x> >= c}` containing `B` with every point of `A` strictly below `c`.
    pub separator: Option<HalfSpace>,
}

/// Whether `conv(a) ∩ conv(b) = ∅`.
pub fn hulls_disjoint(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> Result<Disjointness> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("hulls_disjoint needs two nonempty point sets"));
    }
    check_tol(tol)?;
    let d = a[0].len();
    check_dims(a, d)?;
    check_dims(b, d)?;
    let s = scale_or_one(a.iter().chain(b).flatten().fold(0.0f64, |m, x| m.max(x.abs())));

    // sum λ_i a_i - sum μ_j b_j = 0, sum λ = 1, sum μ = 1
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(a.len() + b.len());
    for p in a {
        columns.push(p.iter().map(|x| x / s).chain([1.0, 0.0]).collect());
    }
    for p in b {
        columns.push(p.iter().map(|x| -x / s).chain([0.0, 1.0]).collect());
    }
    let mut rhs = vec![0.0; d];
    rhs.extend([1.0, 1.0]);

    match phase_one(&columns, &rhs, tol)? {
        Phase1::Feasible { .. } => Ok(Disjointness {
            disjoint: false,
            separator: None,
        }),
        Phase1::Infeasible { y, .. } => {
            // y = (w, y_a, y_b): <w, a_i> <= -y_a < y_b <= <w, b_j>
            let w = project_onto_span(&y[..d], a.iter().chain(b).map(Vec::as_slice));
            let dir = HalfSpace::from_raw(&w, 0.0)?;
            let c = b
                .iter()
                .map(|p| dot(dir.normal(), p))
                .fold(f64::INFINITY, f64::min);
            let sep = dir.with_offset(c);
            let top_a = a
                .iter()
                .map(|p| dot(sep.normal(), p))
                .fold(f64::NEG_INFINITY, f64::max);
            if !(top_a < c) {
                return Err(Error::Numerical("disjointness separator fails on A".into()));
            }
            Ok(Disjointness {
                disjoint: true,
                separator: Some(sep),
            })
        }
    }
}

/// Orthogonal projection of `w` onto the direction space of the affine hull
/// of `points`. Inner products of differences of those points, and hence
/// every separation margin among them, are unchanged.
fn project_onto_span<'a>(w: &[f64], points: impl Iterator<Item = &'a [f64]>) -> Vec<f64> {
    let d = w.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut origin: Option<&[f64]> = None;
    for p in points {
        let Some(o) = origin else {
            origin = Some(p);
            continue;
        };
        if basis.len() == d {
            break;
        }
        let mut v: Vec<f64> = p.iter().zip(o).map(|(x, y)| x - y).collect();
        let len0 = dot(&v, &v).sqrt();
        if len0 == 0.0 {
            continue;
        }
        // modified Gram-Schmidt, twice for stability
        for _ in 0..2 {
            for e in &basis {
                let c = dot(&v, e);
                v.iter_mut().zip(e).for_each(|(vi, ei)| *vi -= c * ei);
            }
        }
        let len = dot(&v, &v).sqrt();
        if len > 1e-10 * len0 {
            basis.push(v.iter().map(|x| x / len).collect());
        }
    }
    if basis.len() == d {
        return w.to_vec();
    }
    let mut out = vec![0.0; d];
    for e in &basis {
        let c = dot(w, e);
        out.iter_mut().zip(e).for_each(|(o, ei)| *o += c * ei);
    }
    out
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

fn check_dims(points: &[Vec<f64>], d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::invalid("points must have positive dimension"));
    }
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::invalid(format!(
            "dimension mismatch: expected {d}, found {}",
            p.len()
        )));
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::invalid("non-finite coordinate"));
    }
    Ok(())
}

fn input_scale(points: &[Vec<f64>], q: &[f64]) -> f64 {
    points
        .iter()
        .flatten()
        .chain(q)
        .fold(0.0f64, |m, x| m.max(x.abs()))
}

fn scale_or_one(s: f64) -> f64 {
    if s > 0.0 && s.is_finite() {
        s
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Vec<f64>> {
        vec![vec![-1.0, -1.0], vec![1.0, -1.0], vec![1.0, 1.0], vec![-1.0, 1.0]]
    }

    #[test]
    fn mean_is_inside() {
        let pts = vec![vec![0.0, 0.0, 1.0], vec![2.0, 0.5, 0.0], vec![1.0, 3.0, 2.0], vec![0.3, 0.2, -1.0]];
        let mean: Vec<f64> = (0..3).map(|k| pts.iter().map(|p| p[k]).sum::<f64>() / 4.0).collect();
        let cert = point_in_hull(&pts, &mean, 1e-9).unwrap();
        assert!(cert.is_inside());
        cert.verify(&pts, &mean).unwrap();
        // uniform weights are also valid for the mean
        let uniform = HullCertificate {
            verdict: Verdict::Inside,
            weights: vec![0.25; 4],
            separator: None,
        };
        uniform.verify(&pts, &mean).unwrap();
    }

    #[test]
    fn square_far_point_outside() {
        let cert = point_in_hull(&square(), &[2.0, 0.0], 1e-9).unwrap();
        assert_eq!(cert.verdict, Verdict::Outside);
        let sep = cert.separator.unwrap();
        assert!((sep.normal()[0] - 1.0).abs() < 1e-9 && sep.normal()[1].abs() < 1e-9);
        assert!(sep.offset() >= 1.0 - 1e-12 && sep.offset() < 2.0);
    }

    #[test]
    fn boundary_resolves_inside() {
        let cert = point_in_hull(&square(), &[1.0, 0.3], 1e-9).unwrap();
        assert!(cert.is_inside());
        let cert = point_in_hull(&square(), &[1.0, 1.0], 1e-9).unwrap();
        assert!(cert.is_inside());
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(point_in_hull(&[], &[0.0], 1e-9), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            point_in_hull(&square(), &[0.0, 0.0, 0.0], 1e-9),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(point_in_hull(&square(), &[0.0, 0.0], 0.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(point_in_hull(&square(), &[0.0, 0.0], -1.0), Err(Error::InvalidArgument(_))));
        assert!(hulls_disjoint(&[], &square(), 1e-9).is_err());
        assert!(hulls_disjoint(&[vec![0.0]], &square(), 1e-9).is_err());
    }

    #[test]
    fn single_point_hull() {
        assert!(point_in_hull(&[vec![1.0, 2.0]], &[1.0, 2.0], 1e-9).unwrap().is_inside());
        assert!(!point_in_hull(&[vec![1.0, 2.0]], &[1.0, 2.1], 1e-9).unwrap().is_inside());
        assert!(point_in_hull(&[vec![0.0, 0.0]], &[0.0, 0.0], 1e-9).unwrap().is_inside());
    }

    #[test]
    fn disjoint_points() {
        let r = hulls_disjoint(&[vec![0.0, 0.0]], &[vec![1.0, 0.0]], 1e-9).unwrap();
        assert!(r.disjoint);
        let sep = r.separator.unwrap();
        assert!((sep.normal()[0] - 1.0).abs() < 1e-9);
        assert!(sep.offset() > 0.0 && sep.offset() <= 1.0 + 1e-12);
    }

    #[test]
    fn identical_sets_intersect() {
        let r = hulls_disjoint(&square(), &square(), 1e-9).unwrap();
        assert!(!r.disjoint && r.separator.is_none());
    }

    #[test]
    fn crossing_diagonals_intersect() {
        let a = vec![vec![-1.0, -1.0], vec![1.0, 1.0]];
        let b = vec![vec![1.0, -1.0], vec![-1.0, 1.0]];
        assert!(!hulls_disjoint(&a, &b, 1e-9).unwrap().disjoint);
    }

    #[test]
    fn deterministic_bits() {
        let pts: Vec<Vec<f64>> = (0..30)
            .map(|i| {
                let a = i as f64 * 0.731;
                vec![a.cos() * (1.0 + 0.1 * a.sin()), a.sin()]
            })
            .collect();
        let q = [0.9, 0.8];
        let a = point_in_hull(&pts, &q, 1e-9).unwrap();
        let b = point_in_hull(&pts, &q, 1e-9).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
