use serde::{Deserialize, Serialize};

use super::estimate::estimate_success_probability;
use crate::epsnet::{min_valid_c, net_size};
use crate::geometry::{BodyKind, BodySpec, ConvexBody};
use crate::{Error, Result};

/// How the sample sizes of a sweep are chosen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TSpec {
    Fixed(Vec<u64>),
    /// `t` from the sample bound at `δ`, with `C` given or minimal.
    Auto { delta: f64, c: Option<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Template body; `dim` is replaced by each entry of `dims`.
    pub body: BodySpec,
    pub dims: Vec<usize>,
    pub thetas: Vec<f64>,
    pub ts: TSpec,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub body: String,
    pub d: usize,
    pub theta: f64,
    pub t: u64,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub seed: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let empty_t = matches!(&self.ts, TSpec::Fixed(ts) if ts.is_empty());
        if self.dims.is_empty() || self.thetas.is_empty() || empty_t {
            return Err(Error::invalid("sweep grid is empty"));
        }
        if self.body.kind == BodyKind::Polygon2d && self.dims.iter().any(|&d| d != 2) {
            return Err(Error::invalid("polygon sweeps are planar (d = 2)"));
        }
        Ok(())
    }
}

/// Grid over `dims × thetas × ts`; every cell reuses `seed`, so cells along
/// the `t` axis share random numbers.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for &d in &cfg.dims {
        let body = ConvexBody::from_spec(&BodySpec {
            dim: d,
            ..cfg.body.clone()
        })?;
        for &theta in &cfg.thetas {
            let ts = match &cfg.ts {
                TSpec::Fixed(ts) => ts.clone(),
                TSpec::Auto { delta, c } => {
                    let c = match c {
                        Some(c) => *c,
                        None => min_valid_c(d, theta, *delta)?,
                    };
                    vec![net_size(d, theta, c)?]
                }
            };
            for t in ts {
                let est = estimate_success_probability(&body, theta, t as usize, cfg.trials, cfg.seed)?;
                rows.push(SweepRow {
                    body: body.kind().name().to_string(),
                    d,
                    theta,
                    t,
                    trials: est.trials,
                    successes: est.successes,
                    p_hat: est.p_hat,
                    wilson_low: est.wilson_low,
                    wilson_high: est.wilson_high,
                    seed: cfg.seed,
                });
            }
        }
    }
    Ok(rows)
}
