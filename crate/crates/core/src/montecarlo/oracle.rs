//! Reference CDFs computed by quadrature of the closed-form densities,
//! independent of the reductions the samplers rely on.

use std::f64::consts::FRAC_PI_2;

use crate::analysis::sphere_area;
use crate::error::{Error, Result};
use crate::halfspace::poisson_kernel_h;
use crate::params::{HalfspacePoint, StableParams};
use crate::quad::integrate;
use crate::specfun::gamma;
use crate::sphere::ball_poisson;

const TOL: f64 = 1e-12;

/// CDF of the hitting position on the line for d = 2.
pub fn halfplane_hit_cdf(p: &StableParams, x: &HalfspacePoint, t: f64) -> Result<f64> {
    if p.d() != 2 {
        return Err(Error::Unsupported("hitting-position CDF is implemented for d = 2".into()));
    }
    p.require_hitting()?;
    let (c, s) = (x.bar[0], x.last.abs());
    if t == f64::INFINITY {
        return Ok(1.0);
    }
    // y = c + s tan(theta), theta + pi/2 = u^{1/(a-1)} removes the
    // algebraic endpoint singularity of the heavy tail
    let upper = ((t - c) / s).atan() + FRAC_PI_2;
    let k = 1.0 / (p.alpha() - 1.0);
    let mut err = None;
    let q = integrate(
        |u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let ph = u.powf(k);
            let (sn, cs) = ph.sin_cos();
            let y = c - s * cs / sn;
            match poisson_kernel_h(p, x, &[y]) {
                Ok(v) => v * s / (sn * sn) * k * u.powf(k - 1.0),
                Err(e) => {
                    err = Some(e);
                    f64::NAN
                }
            }
        },
        0.0,
        upper.powf(1.0 / k),
        TOL,
        TOL,
        4000,
    );
    if let Some(e) = err {
        return Err(e);
    }
    Ok(q.value.clamp(0.0, 1.0))
}

/// CDF of the subordinating time T0 for a start at height a, from its
/// density (-2 delta / a^{2 delta}) t^{delta-1} exp(-a^2/2t) / (2^{1-delta} Gamma(1-delta)),
/// delta = (1 - alpha)/2.
pub fn hit_time_cdf(alpha: f64, a: f64, t: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha < 2.0) || !(a > 0.0) {
        return Err(Error::Domain(format!("need alpha in (1, 2) and a > 0, got {alpha}, {a}")));
    }
    if t <= 0.0 {
        return Ok(0.0);
    }
    let delta = 0.5 * (1.0 - alpha);
    let ln_c = (-2.0 * delta).ln() - 2.0 * delta * a.ln() - (1.0 - delta) * std::f64::consts::LN_2 - gamma(1.0 - delta)?.ln();
    // integrate t * density in u = ln t
    let dens_t = |u: f64| (ln_c + delta * u - a * a / (2.0 * u.exp())).exp();
    let lo = (a * a / 1500.0).ln();
    let hi = t.ln();
    if hi <= lo {
        return Ok(0.0);
    }
    Ok(integrate(dens_t, lo, hi, TOL, TOL, 4000).value.clamp(0.0, 1.0))
}

/// P(1/R^2 <= w) for the exit radius R of the unit ball started at the
/// center, by integrating the ball Poisson kernel over {|y| >= w^{-1/2}}.
pub fn ball_radial_w_cdf(p: &StableParams, w: f64) -> Result<f64> {
    if w <= 0.0 {
        return Ok(0.0);
    }
    let w = w.min(1.0);
    let d = p.d();
    let a = p.alpha();
    let area = sphere_area(d);
    let origin = vec![0.0; d];
    let mut y = vec![0.0; d];
    let mut err = None;
    // R = v^{-1/2}, v = s^{2/a}
    let e = 2.0 / a;
    let q = integrate(
        |s: f64| {
            if s <= 0.0 {
                return 0.0;
            }
            let v = s.powf(e);
            if v >= 1.0 {
                return 0.0;
            }
            let r = v.powf(-0.5);
            y[0] = r;
            match ball_poisson(p, &origin, 1.0, &origin, &y) {
                Ok(k) => area * r.powi(d as i32 - 1) * k * 0.5 * v.powf(-1.5) * e * s.powf(e - 1.0),
                Err(er) => {
                    err = Some(er);
                    f64::NAN
                }
            }
        },
        0.0,
        w.powf(0.5 * a),
        TOL,
        TOL,
        4000,
    );
    if let Some(er) = err {
        return Err(er);
    }
    Ok(q.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{regularized_beta_cdf, regularized_gamma_q};

    #[test]
    fn ball_radial_law_is_beta() {
        for &(d, a) in &[(2usize, 1.5), (3, 0.7), (3, 1.5), (4, 1.2)] {
            let p = StableParams::new(d, a).unwrap();
            for &w in &[0.01, 0.2, 0.5, 0.9, 0.99] {
                let q = ball_radial_w_cdf(&p, w).unwrap();
                let b = regularized_beta_cdf(0.5 * a, 1.0 - 0.5 * a, w).unwrap();
                assert!((q - b).abs() < 1e-8, "d={d} a={a} w={w}: {q} vs {b}");
            }
        }
    }

    #[test]
    fn hit_time_law_matches_gamma_reduction() {
        // T0 = a^2/(2G) with G ~ Gamma((alpha-1)/2)
        let (alpha, a) = (1.5, 1.3);
        for &t in &[0.05, 0.5, 3.0, 100.0] {
            let q = hit_time_cdf(alpha, a, t).unwrap();
            let g = regularized_gamma_q(0.5 * (alpha - 1.0), a * a / (2.0 * t)).unwrap();
            assert!((q - g).abs() < 1e-9, "t={t}: {q} vs {g}");
        }
    }

    #[test]
    fn hit_position_cdf_shape() {
        let p = StableParams::new(2, 1.5).unwrap();
        let x = HalfspacePoint::new(vec![0.4], 1.0);
        let h = halfplane_hit_cdf(&p, &x, 0.4).unwrap();
        assert!((h - 0.5).abs() < 1e-9, "{h}");
        let l = halfplane_hit_cdf(&p, &x, -2.0).unwrap();
        let r = halfplane_hit_cdf(&p, &x, 2.8).unwrap();
        assert!((l + r - 1.0).abs() < 1e-9);
        assert!(halfplane_hit_cdf(&p, &x, 1e9).unwrap() > 0.999);
    }
}
