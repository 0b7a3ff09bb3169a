use serde::{Deserialize, Serialize};

use super::{dot, norm};
use crate::{Error, Result};

/// Closed halfspace `{x : <normal, x> >= offset}` with a unit normal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    normal: Vec<f64>,
    offset: f64,
}

const NORMAL_TOL: f64 = 1e-12;

impl HalfSpace {
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        let n = norm(&normal);
        if normal.is_empty() || !n.is_finite() || (n - 1.0).abs() > NORMAL_TOL {
            return Err(Error::invalid(format!(
                "halfspace normal must have unit length, got {n}"
            )));
        }
        if !offset.is_finite() {
            return Err(Error::invalid("halfspace offset must be finite"));
        }
        Ok(Self { normal, offset })
    }

    /// `{x : <w, x> >= c}` for an arbitrary nonzero `w`, rescaled to a unit normal.
    pub fn from_raw(w: &[f64], c: f64) -> Result<Self> {
        let n = norm(w);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Degenerate("halfspace normal vanishes".into()));
        }
        let normal: Vec<f64> = w.iter().map(|x| x / n).collect();
        // renormalize once more so the stored vector is unit to rounding
        let n2 = norm(&normal);
        let normal = normal.iter().map(|x| x / n2).collect();
        Self::new(normal, c / n)
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Signed distance of `x` past the boundary; nonnegative inside.
    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.signed_distance(x) >= -tol
    }

    /// Closure of the complement, `{x : <-normal, x> >= -offset}`.
    pub fn complement(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -self.offset,
        }
    }

    /// Same normal, new offset.
    pub fn with_offset(&self, offset: f64) -> HalfSpace {
        HalfSpace {
            normal: self.normal.clone(),
            offset,
        }
    }
}
