//! Monte Carlo harness for the containment guarantee.

mod estimate;
mod grunbaum;
pub mod plot;
pub mod records;
mod sweep;
mod trial;

pub use estimate::{
    empirical_min_t, estimate_success_probability, in_pool, MinTReport, SuccessEstimate,
    MIN_TRIALS,
};
pub use grunbaum::{grunbaum_audit, measure_cap, AuditMode, CapMeasure, GrunbaumAudit};
pub use sweep::{run_sweep, SweepConfig, SweepRow, TSpec};
pub use trial::{containment_check, draw_sample, run_trial, run_trial_with_sample, PointSample, TrialOutcome};
