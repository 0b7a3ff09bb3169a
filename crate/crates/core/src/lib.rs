//! Random polytopes inside centered convex bodies.
//!
//! Draw `t` uniform points from a centered convex body `K` and ask whether
//! their convex hull swallows the shrunken copy `θK`. The crate provides the
//! sample-size bound that makes this happen with probability `1 - δ`, exact
//! samplers for a catalog of bodies, LP-based hull membership with
//! certificates, a Monte Carlo harness and audits of the centroid-cap volume
//! inequality behind the bound.

pub mod cli;
pub mod epsnet;
mod error;
pub mod experiments;
pub mod geometry;
pub mod lp;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
