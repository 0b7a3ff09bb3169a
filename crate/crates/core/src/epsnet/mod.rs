//! Sample-size bounds for random polytopes and finite VC-dimension checks.
//!
//! With `ε = (1-θ)^d / e` every cap cut from `K` by a halfspace supporting
//! `θK` from outside has relative volume at least `ε`. A sample hitting all
//! such caps spans `θK`, so an ε-net bound for halfspace ranges
//! (VC-dimension `D = d+1`) becomes a sample bound for `θK ⊆ conv(sample)`.
//! Everything exponential is evaluated through logarithms because `(1-θ)^d`
//! underflows long before the interesting regimes run out.

mod vc;

use serde::{Deserialize, Serialize};

pub use vc::{is_shattered, vc_dimension_halfspaces, MAX_VC_POINTS};

use crate::{Error, Result};

const E: f64 = std::f64::consts::E;

/// Absolute tolerance of the minimal-constant bisection.
pub const MIN_C_TOL: f64 = 1e-6;

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::invalid(format!("theta must lie in (0,1), got {theta}")));
    }
    Ok(())
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid(format!("delta must lie in (0,1), got {delta}")));
    }
    Ok(())
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    Ok(())
}

/// `ln ε` for `ε = (1-θ)^d / e`.
pub fn ln_epsilon(d: usize, theta: f64) -> Result<f64> {
    check_dim(d)?;
    check_theta(theta)?;
    Ok(d as f64 * (-theta).ln_1p() - 1.0)
}

/// `(1-θ)^d / e`, the minimum relative volume of a cap beyond `θK`.
pub fn epsilon_lower_bound(d: usize, theta: f64) -> Result<f64> {
    Ok(ln_epsilon(d, theta)?.exp())
}

/// `⌈C (d+1) e (1-θ)^{-d} ln(e (1-θ)^{-d})⌉`.
pub fn net_size(d: usize, theta: f64, c: f64) -> Result<u64> {
    if !(c.is_finite() && c >= 2.0) {
        return Err(Error::invalid(format!("C must be at least 2, got {c}")));
    }
    let ln_eps = ln_epsilon(d, theta)?;
    let dd = (d + 1) as f64;
    // ln t = ln C + ln D - ln ε + ln(-ln ε)
    let ln_t = c.ln() + dd.ln() - ln_eps + (-ln_eps).ln();
    if ln_t > (i64::MAX as f64).ln() {
        return Err(Error::Range(format!(
            "sample size e^{ln_t:.1} exceeds 2^63-1 (d={d}, theta={theta})"
        )));
    }
    let t = (c * dd * (-ln_eps).exp() * (-ln_eps)).ceil();
    if !(t.is_finite() && t < i64::MAX as f64) {
        return Err(Error::Range("sample size exceeds 2^63-1".into()));
    }
    Ok(t as u64)
}

/// Log-space form of `C² ε^{C-2} <= (δ/4)^{1/D} / e^k`: returns `lhs - rhs`.
fn condition_gap(c: f64, ln_eps: f64, dd: f64, delta: f64, e_power: f64) -> f64 {
    let lhs = 2.0 * c.ln() + (c - 2.0) * ln_eps;
    let rhs = (delta / 4.0).ln() / dd - e_power;
    lhs - rhs
}

/// The constant condition attached to the sample bound, with `e³`.
pub fn theorem_constant_check(d: usize, theta: f64, delta: f64, c: f64) -> Result<bool> {
    check_delta(delta)?;
    if !(c >= 2.0) {
        return Err(Error::invalid(format!("C must be at least 2, got {c}")));
    }
    let ln_eps = ln_epsilon(d, theta)?;
    Ok(condition_gap(c, ln_eps, (d + 1) as f64, delta, 3.0) <= 0.0)
}

/// The ε-net lemma's constant condition `C² ε^{C-2} <= (δ/4)^{1/D} / e²`.
pub fn lemma_constant_check(c: f64, epsilon: f64, dd: u32, delta: f64) -> Result<bool> {
    if !(epsilon > 0.0 && epsilon < 1.0 / E) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1/e), got {epsilon}")));
    }
    if dd == 0 {
        return Err(Error::invalid("D must be positive"));
    }
    check_delta(delta)?;
    if !(c >= 2.0) {
        return Err(Error::invalid(format!("C must be at least 2, got {c}")));
    }
    Ok(condition_gap(c, epsilon.ln(), dd as f64, delta, 2.0) <= 0.0)
}

/// Smallest `C >= 2` satisfying [`theorem_constant_check`], to [`MIN_C_TOL`].
///
/// `g(C) = 2 ln C + (C-2) ln ε` has derivative `2/C + ln ε < 0` for `C >= 2`
/// whenever `ε < 1/e`, so the feasible set is a ray and bisection applies.
pub fn min_valid_c(d: usize, theta: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let ln_eps = ln_epsilon(d, theta)?;
    let dd = (d + 1) as f64;
    // g'(2) = 1 + ln ε
    if ln_eps >= -1.0 {
        return Err(Error::NoSolution("epsilon >= 1/e; condition is not monotone".into()));
    }
    let gap = |c: f64| condition_gap(c, ln_eps, dd, delta, 3.0);
    if gap(2.0) <= 0.0 {
        return Ok(2.0);
    }
    let mut lo = 2.0;
    let mut hi = 4.0;
    while gap(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::NoSolution("no C below 1e12 satisfies the condition".into()));
        }
    }
    while hi - lo > MIN_C_TOL {
        let mid = 0.5 * (lo + hi);
        if gap(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `e² ε t² / D² · e^{-ε t / D}`, the tail term the lemma compares against `(δ/4)^{1/D}`.
pub fn failure_probability_bound(t: u64, epsilon: f64, dd: u32) -> Result<f64> {
    if t == 0 || dd == 0 {
        return Err(Error::invalid("t and D must be positive"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0,1), got {epsilon}")));
    }
    Ok(ln_failure_probability_bound(t, epsilon.ln(), dd).exp())
}

/// Natural log of [`failure_probability_bound`], taking `ln ε` directly.
pub fn ln_failure_probability_bound(t: u64, ln_eps: f64, dd: u32) -> f64 {
    let t = t as f64;
    let dd = dd as f64;
    2.0 + ln_eps + 2.0 * t.ln() - 2.0 * dd.ln() - ln_eps.exp() * t / dd
}

/// The full parameter tuple of one sample-size guarantee.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetBound {
    pub d: usize,
    pub theta: f64,
    pub delta: f64,
    pub c: f64,
    /// VC-dimension of halfspaces in `R^d`, `d + 1`.
    pub vc_dim: u32,
    pub epsilon: f64,
    pub t: u64,
}

impl NetBound {
    /// Validates the constant condition and computes `t`.
    pub fn new(d: usize, theta: f64, delta: f64, c: f64) -> Result<Self> {
        if !theorem_constant_check(d, theta, delta, c)? {
            return Err(Error::invalid(format!(
                "C = {c} violates the constant condition for d={d}, theta={theta}, delta={delta}"
            )));
        }
        Ok(Self {
            d,
            theta,
            delta,
            c,
            vc_dim: (d + 1) as u32,
            epsilon: epsilon_lower_bound(d, theta)?,
            t: net_size(d, theta, c)?,
        })
    }

    /// Uses the minimal admissible constant.
    pub fn auto(d: usize, theta: f64, delta: f64) -> Result<Self> {
        let c = min_valid_c(d, theta, delta)?;
        Self::new(d, theta, delta, c)
    }

    pub fn ln_epsilon(&self) -> f64 {
        ln_epsilon(self.d, self.theta).expect("validated at construction")
    }

    /// `ln((δ/4)^{1/D})`.
    pub fn ln_tail_target(&self) -> f64 {
        (self.delta / 4.0).ln() / self.vc_dim as f64
    }

    /// Whether the tail term at `t` drops below `(δ/4)^{1/D}`.
    pub fn tail_bound_holds(&self) -> bool {
        ln_failure_probability_bound(self.t, self.ln_epsilon(), self.vc_dim) < self.ln_tail_target()
    }
}

/// Sample size and success probability of the linear-size special case:
/// `θ = 1/d`, `δ = e^{-d-1}`, `C = 7`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearRegimeCheck {
    pub d: usize,
    pub condition_holds: bool,
    pub t: u64,
    pub within_500d: bool,
    /// `1 - e^{-d-1}`, which is at least the advertised `1 - e^{-d}`.
    pub success_probability: f64,
}

pub fn linear_regime_check(d: usize) -> Result<LinearRegimeCheck> {
    if d < 2 {
        return Err(Error::invalid("the linear regime needs d >= 2 (theta = 1/d < 1)"));
    }
    let theta = 1.0 / d as f64;
    let delta = (-(d as f64) - 1.0).exp();
    let t = net_size(d, theta, 7.0)?;
    Ok(LinearRegimeCheck {
        d,
        condition_holds: theorem_constant_check(d, theta, delta, 7.0)?,
        t,
        within_500d: t <= 500 * d as u64,
        success_probability: 1.0 - delta,
    })
}
