//! Centered convex bodies, halfspaces, uniform samplers and the exact planar
//! kernel used to cross-check the LP-based routines.

mod body;
mod cap;
mod halfspace;
pub mod planar;
mod sample;

pub use body::{BodyKind, BodySpec, ConvexBody};
pub use cap::{cap_fraction_mc, CapEstimate};
pub use halfspace::HalfSpace;
pub use planar::{clip_fraction_exact_2d, convex_hull_2d, Polygon};

/// Membership tolerance shared by the geometry and LP layers.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance on the norm of a direction passed as "unit".
pub const UNIT_TOL: f64 = 1e-9;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn check_unit(u: &[f64]) -> crate::Result<()> {
    let n = norm(u);
    if !n.is_finite() || (n - 1.0).abs() > UNIT_TOL {
        return Err(crate::Error::invalid(format!(
            "direction must be a unit vector, got norm {n}"
        )));
    }
    Ok(())
}
