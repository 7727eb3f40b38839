//! Quadrature on the boundaries, Poisson and Martin integrals, Hardy norms,
//! the principal-value fractional Laplacian and nontangential limit probes.

mod fatou;
mod fraclap;
mod grid;
mod hardy;
mod repr;

pub use fatou::{fatou_probe, running_max, FatouSample};
pub use fraclap::{frac_laplacian_pv, Growth, PvEstimate};
pub use grid::{
    quad_hyperplane, quad_hyperplane_focused, quad_sphere, quad_sphere_focused, sphere_area, Focus, GridIntegral, GridKind,
    QuadratureGrid,
};
pub use hardy::{hardy_norm, HardyEstimate, HardyOptions, SliceNorm};
pub use repr::{
    majorant_f, omega_integrability, poisson_density_d, poisson_density_h, poisson_integral_d, poisson_integral_h,
    prob_hardy_norm, sphere_grid_for, sphere_lp_norm, BoundaryFunction, DiscreteMeasure, Flavor, HarmonicRepresentation,
    IntegralOptions, Integrability, MeasurePart, Space,
};
