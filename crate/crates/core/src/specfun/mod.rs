//! Special functions used by the kernels: gamma, Gauss hypergeometric,
//! associated Legendre, modified Bessel, Mittag-Leffler and the regularized
//! incomplete beta/gamma functions.

mod bessel;
mod gamma;
mod hyper;
mod incomplete;
mod mittag;

pub use bessel::{bessel_i, bessel_k, bessel_k_scaled, ln_bessel_i, ln_bessel_k};
pub use gamma::{gamma, gamma_sign, ln_gamma, ln_rgamma, sin_pi};
pub use hyper::{
    gauss_2f1, gauss_2f1_tail, legendre_connection, legendre_p, legendre_p_with, LegendreRoute,
};
pub use incomplete::{chi2_quantile, regularized_beta_cdf, regularized_gamma_p, regularized_gamma_q};
pub use mittag::{ln_mittag_leffler, mittag_leffler};

/// Stopping rule shared by the power series in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { rel_tol: 1e-13, max_terms: 10_000 }
    }
}
