//! Kernels of the stable process relative to the unit sphere and its
//! complement, plus the ball Poisson kernel.

use crate::error::{Error, Result};
use crate::params::{dist, dot, norm, BoundaryPoint, StableParams};
use crate::specfun::{gauss_2f1, gauss_2f1_tail, legendre_p, ln_gamma, SeriesControl};

/// Below this distance to the sphere, 1 - phi is taken from the
/// cancellation-free series.
pub const NEAR_SPHERE: f64 = 1e-3;

fn near(g: f64) -> bool {
    // g = r^2 - 1; compare |r - 1| with the threshold
    let r = (1.0 + g).sqrt();
    (g / (1.0 + r)).abs() < NEAR_SPHERE
}

/// phi(0) = C2 / Gamma(d/2).
pub fn phi_at_origin(p: &StableParams) -> Result<f64> {
    p.require_hitting()?;
    Ok(p.constants().c2 / ln_gamma(0.5 * p.d() as f64)?.exp())
}

/// Factor I(r) = C2 |r^2 - 1|^{a/2 - 1} r^{1 - d/2} with
/// phi(r) = I(r) P^{1-d/2}_{-a/2}((r^2 + 1)/|r^2 - 1|).
pub fn legendre_prefactor(p: &StableParams, r: f64) -> Result<f64> {
    p.require_hitting()?;
    if !(r > 0.0) || r == 1.0 {
        return Err(Error::Domain(format!("prefactor needs r > 0, r != 1, got {r}")));
    }
    let g = gap(r);
    let d = p.d() as f64;
    let a = p.alpha();
    Ok((p.constants().c2.ln() + (0.5 * a - 1.0) * g.abs().ln() + (1.0 - 0.5 * d) * r.ln()).exp())
}

fn phi_direct_g(p: &StableParams, g: f64) -> Result<f64> {
    let d = p.d() as f64;
    let a = p.alpha();
    if g == 0.0 {
        return Ok(1.0);
    }
    if g <= -1.0 + 1e-40 {
        return phi_at_origin(p);
    }
    if g > 1e200 {
        // phi(R) = R^{a-d} phi(1/R), with phi(1/R) = phi(0) to double precision
        return Ok((0.5 * (a - d) * g.ln()).exp() * phi_at_origin(p)?);
    }
    let t = (2.0 + g) / g.abs();
    let lp = legendre_p(1.0 - 0.5 * d, -0.5 * a, t, SeriesControl::default())?;
    let l = p.constants().c2.ln() + (0.5 * a - 1.0) * g.abs().ln() + 0.5 * (1.0 - 0.5 * d) * g.ln_1p();
    Ok(l.exp() * lp)
}

/// 1 - phi(R) for R > 1 near the sphere, from the connection series with the
/// leading 1 - R^{a-d} taken through expm1. `g = R^2 - 1 > 0`.
fn one_minus_phi_outer_series(p: &StableParams, g: f64) -> Result<f64> {
    let d = p.d() as f64;
    let a = p.alpha();
    let ctl = SeriesControl::default();
    let ln_r = 0.5 * g.ln_1p();
    let q = g / (1.0 + g);
    let f1m1 = gauss_2f1_tail(1.0 - 0.5 * a, 0.5 * (d - a), 2.0 - a, q, 1, ctl)?;
    let f2 = gauss_2f1(0.5 * a, 0.5 * (d + a) - 1.0, a, q, ctl)?;
    let c = second_coefficient(p)?;
    let lead = -((a - d) * ln_r).exp_m1();
    let ra = ((a - d) * ln_r).exp();
    let second = c * ((a - 1.0) * g.ln() + (2.0 - d - a) * ln_r).exp();
    Ok(lead - ra * f1m1 - second * f2)
}

/// Coefficient c of the (R^2-1)^{a-1} R^{2-d-a} term in phi near the sphere.
pub fn second_coefficient(p: &StableParams) -> Result<f64> {
    let d = p.d() as f64;
    let a = p.alpha();
    let g1 = ln_gamma(1.0 - a)?;
    let g2 = ln_gamma(1.0 - 0.5 * a)?;
    let g3 = ln_gamma(0.5 * (d - a))?;
    // Gamma(1-a) < 0 for a in (1, 2); the others are positive
    Ok(-p.constants().c2 * (g1 - g2 - g3).exp())
}

fn one_minus_phi_g(p: &StableParams, g: f64) -> Result<f64> {
    if g == 0.0 {
        return Ok(0.0);
    }
    if !near(g) {
        return Ok(1.0 - phi_direct_g(p, g)?);
    }
    if g > 0.0 {
        return one_minus_phi_outer_series(p, g);
    }
    // r < 1: 1 - phi(r) = 1 - r^{a-d} + r^{a-d} (1 - phi(1/r))
    let d = p.d() as f64;
    let a = p.alpha();
    let ln_r = 0.5 * g.ln_1p();
    let inv = -g / (1.0 + g);
    let outer = one_minus_phi_outer_series(p, inv)?;
    Ok(-((a - d) * ln_r).exp_m1() + ((a - d) * ln_r).exp() * outer)
}

fn phi_g(p: &StableParams, g: f64) -> Result<f64> {
    if near(g) {
        Ok(1.0 - one_minus_phi_g(p, g)?)
    } else {
        phi_direct_g(p, g)
    }
}

fn gap(r: f64) -> f64 {
    (r - 1.0) * (r + 1.0)
}

fn check_radius(p: &StableParams, r: f64) -> Result<()> {
    p.require_hitting()?;
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius {r} must be finite and nonnegative")));
    }
    Ok(())
}

/// Radial profile phi(r) = P^x(the process ever hits the unit sphere), |x| = r.
pub fn phi(p: &StableParams, r: f64) -> Result<f64> {
    check_radius(p, r)?;
    phi_g(p, gap(r))
}

/// 1 - phi(r), accurate near the sphere.
pub fn one_minus_phi(p: &StableParams, r: f64) -> Result<f64> {
    check_radius(p, r)?;
    one_minus_phi_g(p, gap(r))
}

/// 1 - phi(r) where `g = r^2 - 1` is supplied directly, so callers that know
/// the gap in closed form do not lose digits forming r first.
pub fn one_minus_phi_from_gap(p: &StableParams, g: f64) -> Result<f64> {
    p.require_hitting()?;
    if !(g >= -1.0) || !g.is_finite() {
        return Err(Error::Domain(format!("gap r^2 - 1 = {g} out of range")));
    }
    one_minus_phi_g(p, g)
}

/// phi(r) through the Legendre representation only, whatever the radius.
pub fn phi_direct(p: &StableParams, r: f64) -> Result<f64> {
    check_radius(p, r)?;
    phi_direct_g(p, gap(r))
}

/// 1 - phi(r) through the near-sphere series only. Inside the ball the
/// series is evaluated at the inverted radius 1/r.
pub fn one_minus_phi_series(p: &StableParams, r: f64) -> Result<f64> {
    check_radius(p, r)?;
    let g = gap(r);
    if r > 1.0 {
        return one_minus_phi_outer_series(p, g);
    }
    if !(r > 0.0) || r == 1.0 {
        return Err(Error::Domain(format!("series needs 0 < r != 1, got {r}")));
    }
    let inv = -g / (1.0 + g);
    let e = (p.alpha() - p.d() as f64) * 0.5 * g.ln_1p();
    Ok(-e.exp_m1() + e.exp() * one_minus_phi_outer_series(p, inv)?)
}

/// Probability that the process started at x ever hits the unit sphere.
pub fn hitting_prob_sphere(p: &StableParams, x: &[f64]) -> Result<f64> {
    p.check_dim(x, "x")?;
    phi(p, norm(x))
}

fn check_unit(z: &[f64]) -> Result<()> {
    if (norm(z) - 1.0).abs() > 1e-10 {
        return Err(Error::Domain(format!("boundary point has norm {}, expected 1", norm(z))));
    }
    Ok(())
}

fn check_off_sphere(x: &[f64]) -> Result<f64> {
    let g = {
        let r = norm(x);
        gap(r)
    };
    if g == 0.0 {
        return Err(Error::Domain("point lies on the unit sphere".into()));
    }
    Ok(g)
}

/// Poisson kernel of the sphere complement, a density with respect to the
/// normalized surface measure.
pub fn poisson_kernel_d(p: &StableParams, x: &[f64], z: &[f64]) -> Result<f64> {
    p.require_hitting()?;
    p.check_dim(x, "x")?;
    p.check_dim(z, "z")?;
    check_unit(z)?;
    let g = check_off_sphere(x)?;
    let r = dist(x, z);
    if r == 0.0 {
        return Err(Error::Singular("x coincides with the boundary point".into()));
    }
    Ok(phi_at_origin(p)? * poisson_shape(p, g, r))
}

pub(crate) fn poisson_shape(p: &StableParams, g: f64, r: f64) -> f64 {
    let d = p.d() as f64;
    let a = p.alpha();
    ((a - 1.0) * g.abs().ln() - (d + a - 2.0) * r.ln()).exp()
}

/// Green function of the sphere complement.
pub fn green_d(p: &StableParams, x: &[f64], y: &[f64]) -> Result<f64> {
    p.require_hitting()?;
    p.check_dim(x, "x")?;
    p.check_dim(y, "y")?;
    let gx = check_off_sphere(x)?;
    let gy = check_off_sphere(y)?;
    let r2 = {
        let r = dist(x, y);
        r * r
    };
    if r2 == 0.0 {
        return Err(Error::Singular("x = y".into()));
    }
    // |w|^2 - 1 = (1 - |x|^2)(1 - |y|^2)/|x - y|^2
    let g = gx * gy / r2;
    let d = p.d() as f64;
    let a = p.alpha();
    Ok(p.constants().a_d_alpha * r2.powf(0.5 * (a - d)) * one_minus_phi_g(p, g)?.max(0.0))
}

/// Martin kernel of the sphere complement, normalized at the origin.
pub fn martin_d(p: &StableParams, x: &[f64], z: &BoundaryPoint) -> Result<f64> {
    p.require_hitting()?;
    p.check_dim(x, "x")?;
    let g = check_off_sphere(x)?;
    match z {
        BoundaryPoint::Finite(z) => {
            p.check_dim(z, "z")?;
            check_unit(z)?;
            let r = dist(x, z);
            if r == 0.0 {
                return Err(Error::Singular("x coincides with the boundary point".into()));
            }
            Ok(poisson_shape(p, g, r))
        }
        BoundaryPoint::Infinity => Ok(one_minus_phi_g(p, g)? / one_minus_phi_g(p, -1.0)?),
    }
}

/// Poisson kernel of the ball B(a, r): density of the exit position.
pub fn ball_poisson(p: &StableParams, a: &[f64], r: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    p.check_dim(a, "a")?;
    p.check_dim(x, "x")?;
    p.check_dim(y, "y")?;
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius {r} must be positive")));
    }
    let dx = dist(x, a);
    let dy = dist(y, a);
    if !(dx < r) {
        return Err(Error::Domain("x must lie inside the open ball".into()));
    }
    if !(dy > r) {
        return Err(Error::Domain("y must lie outside the closed ball".into()));
    }
    let d = p.d() as f64;
    let num = (r - dx) * (r + dx);
    let den = (dy - r) * (dy + r);
    Ok(p.constants().c1 * (num / den).powf(0.5 * p.alpha()) * dist(x, y).powf(-d))
}

/// Cosine of the angle between x and y, used by callers building Green
/// arguments from polar data.
pub fn cos_angle(x: &[f64], y: &[f64]) -> f64 {
    dot(x, y) / (norm(x) * norm(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, a: f64) -> StableParams {
        StableParams::new(d, a).unwrap()
    }

    #[test]
    fn origin_value() {
        let p2 = p(2, 1.5);
        let v = phi(&p2, 0.0).unwrap();
        assert!((v - p2.constants().c2).abs() < 1e-15);
        let small = phi(&p2, 1e-6).unwrap();
        assert!((small - v).abs() < 1e-9);
    }

    #[test]
    fn limits() {
        for &(d, a) in &[(2, 1.5), (3, 1.2), (3, 1.8), (2, 1.05)] {
            let q = p(d, a);
            assert_eq!(phi(&q, 1.0).unwrap(), 1.0);
            let v = phi(&q, 1.0 - 1e-8).unwrap();
            assert!((v - 1.0).abs() < 1e-3 || a < 1.4, "d={d} a={a} v={v}");
            let w = phi(&q, 1.0 + 1e-8).unwrap();
            assert!(w < 1.0 && v < 1.0);
        }
        let v = phi(&p(2, 1.5), 1e6).unwrap();
        assert!(v < 1e-2);
    }

    #[test]
    fn series_and_direct_agree_on_overlap() {
        for &(d, a) in &[(2, 1.5), (3, 1.2), (3, 1.8), (4, 1.5), (2, 1.1)] {
            let q = p(d, a);
            for k in 0..=10 {
                let delta = NEAR_SPHERE * (1.0 + k as f64 / 10.0);
                for &r in &[1.0 + delta, 1.0 - delta] {
                    let direct = 1.0 - phi_direct(&q, r).unwrap();
                    let series = one_minus_phi_series(&q, r).unwrap();
                    assert!((direct / series - 1.0).abs() < 1e-8, "d={d} a={a} r={r}: {direct} {series}");
                }
            }
        }
    }

    #[test]
    fn inversion_identity() {
        for &(d, a) in &[(2, 1.5), (3, 1.3)] {
            let q = p(d, a);
            for &r in &[0.1, 0.5, 0.9, 0.999_5] {
                let lhs = phi(&q, r).unwrap();
                let rhs = r.powf(a - d as f64) * phi(&q, 1.0 / r).unwrap();
                assert!((lhs / rhs - 1.0).abs() < 1e-12, "r={r}");
            }
        }
    }

    #[test]
    fn poisson_at_origin_is_constant() {
        let q = p(3, 1.5);
        let v1 = poisson_kernel_d(&q, &[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap();
        let v2 = poisson_kernel_d(&q, &[0.0, 0.0, 0.0], &[0.0, 0.6, 0.8]).unwrap();
        assert_eq!(v1, v2);
        assert!((v1 - phi_at_origin(&q).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn martin_normalization() {
        let q = p(2, 1.5);
        let o = [0.0, 0.0];
        assert_eq!(martin_d(&q, &o, &BoundaryPoint::Finite(vec![0.6, 0.8])).unwrap(), 1.0);
        assert!((martin_d(&q, &o, &BoundaryPoint::Infinity).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn prefactor_cancels_first_connection_coefficient() {
        for &(d, a) in &[(2usize, 1.5), (3, 1.2), (3, 1.8), (5, 1.3)] {
            let pp = p(d, a);
            for &r in &[1.001, 1.3, 2.0, 7.5] {
                let t = (r * r + 1.0) / (r * r - 1.0);
                let (f1, _) = crate::specfun::legendre_connection(d as f64, a, t).unwrap();
                let v = legendre_prefactor(&pp, r).unwrap() * f1;
                assert!((v / r.powf(a - d as f64) - 1.0).abs() < 1e-10, "d={d} a={a} r={r}");
            }
        }
    }

    #[test]
    fn errors() {
        let q = p(2, 1.5);
        assert!(matches!(poisson_kernel_d(&q, &[1.0, 0.0], &[1.0, 0.0]), Err(Error::Domain(_))));
        assert!(matches!(green_d(&q, &[0.2, 0.0], &[0.2, 0.0]), Err(Error::Singular(_))));
        assert!(matches!(phi(&p(2, 0.9), 0.5), Err(Error::Domain(_))));
        assert!(ball_poisson(&p(2, 0.5), &[0.0, 0.0], 1.0, &[0.2, 0.0], &[0.5, 0.5]).is_err());
    }
}
