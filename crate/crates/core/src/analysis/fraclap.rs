//! Principal-value evaluation of the fractional Laplacian in the plane.

use crate::error::{Error, Result};
use crate::params::StableParams;
use crate::quad::integrate;
use std::f64::consts::PI;

/// |u(y)| <= constant (1 + |y|)^exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Growth {
    pub exponent: f64,
    pub constant: f64,
}

/// Value of the fractional Laplacian with an error bar and the size of the
/// cancelling contributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvEstimate {
    pub value: f64,
    pub error: f64,
    /// A_{d,-alpha} times the integral of |integrand|: the scale against which
    /// a zero value is judged.
    pub local_scale: f64,
}

const TOL: f64 = 1e-11;
const MAX_INTERVALS: usize = 4000;

/// Fractional Laplacian of u at x (d = 2): symmetric second differences on
/// eps < |h| < 1 with a quadratic model for |h| < eps, the plain difference on
/// 1 < |h| < r_max, and an analytic tail bound beyond r_max.
pub fn frac_laplacian_pv<F>(p: &StableParams, u: F, growth: Growth, x: &[f64], eps: f64, r_max: f64) -> Result<PvEstimate>
where
    F: Fn(&[f64]) -> f64,
{
    if p.d() != 2 {
        return Err(Error::Unsupported("principal-value Laplacian is implemented for d = 2".into()));
    }
    p.check_dim(x, "x")?;
    let a = p.alpha();
    if growth.exponent >= a {
        return Err(Error::Integrability(format!(
            "growth exponent {} must be below alpha = {a}",
            growth.exponent
        )));
    }
    if !(eps > 0.0 && eps < 1.0 && r_max > 1.0) {
        return Err(Error::StepSize(format!("need 0 < eps < 1 < r_max, got eps={eps} r_max={r_max}")));
    }
    let ux = u(x);
    let second = |rho: f64, th: f64| {
        let (hc, hs) = (rho * th.cos(), rho * th.sin());
        u(&[x[0] + hc, x[1] + hs]) + u(&[x[0] - hc, x[1] - hs]) - 2.0 * ux
    };
    let first = |rho: f64, th: f64| u(&[x[0] + rho * th.cos(), x[1] + rho * th.sin()]) - ux;
    let converged = std::cell::Cell::new(true);
    // radial integral in ln(rho) of rho^{-a} times an angular integral
    let radial = |g: &dyn Fn(f64, f64) -> f64, hi_angle: f64, lo: f64, hi: f64, absolute: bool| {
        let q = integrate(
            |l: f64| {
                let rho = l.exp();
                let qa = if absolute {
                    integrate(|th| g(rho, th).abs(), 0.0, hi_angle, 1e-15, 1e-6, 200)
                } else {
                    integrate(|th| g(rho, th), 0.0, hi_angle, 1e-15, TOL, MAX_INTERVALS)
                };
                if !absolute && !qa.converged {
                    converged.set(false);
                }
                qa.value * rho.powf(-a)
            },
            lo.ln(),
            hi.ln(),
            1e-15,
            if absolute { 1e-6 } else { TOL },
            if absolute { 200 } else { MAX_INTERVALS },
        );
        if !absolute && !q.converged {
            converged.set(false);
        }
        q
    };
    let model = |e: f64| {
        let q = integrate(|th| second(e, th), 0.0, PI, 1e-15, TOL, MAX_INTERVALS);
        q.value * e.powf(-a) / (2.0 - a)
    };
    let qi = radial(&second, PI, eps, 1.0, false);
    let qh = radial(&second, PI, 0.5 * eps, eps, false);
    let corr = model(eps);
    let corr_err = (corr - (qh.value + model(0.5 * eps))).abs();
    let qf = radial(&first, 2.0 * PI, 1.0, r_max, false);
    let qia = radial(&second, PI, eps, 1.0, true);
    let qfa = radial(&first, 2.0 * PI, 1.0, r_max, true);

    let g = growth.exponent;
    let big = if g >= 0.0 {
        growth.constant * 2f64.powf(g) * r_max.powf(g - a) / (a - g)
    } else {
        growth.constant * r_max.powf(-a) / a
    };
    let tail = 2.0 * PI * (big + ux.abs() * r_max.powf(-a) / a);
    if !(qi.value + qf.value + corr).is_finite() {
        return Err(Error::StepSize("adaptive quadrature produced a non-finite value".into()));
    }
    let unresolved = if converged.get() { 0.0 } else { qi.error.max(qf.error) };
    let k = p.constants().a_d_neg_alpha;
    Ok(PvEstimate {
        value: k * (qi.value + corr + qf.value),
        error: k * (qi.error + qf.error + corr_err + tail + unresolved),
        local_scale: k * (qia.value + corr.abs() + qfa.value),
    })
}
