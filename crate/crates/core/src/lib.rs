//! Potential theory for the rotationally symmetric alpha-stable process.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]
pub mod error;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub mod params;
pub mod sphere;

pub use params::{BoundaryPoint, ExtPoint, HalfspacePoint, KernelConstants, PointD, StableParams};
pub mod halfspace;
pub mod analysis;
pub mod relativistic;
pub mod montecarlo;
