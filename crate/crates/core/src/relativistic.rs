//! Hitting probabilities and harmonic measure for the relativistic stable
//! process, obtained by subordinating a Bessel process.

use crate::error::{Error, Result};
use crate::params::{c4, norm, HalfspacePoint, StableParams};
use crate::quad::integrate;
use crate::specfun::{ln_bessel_i, ln_bessel_k, ln_gamma, ln_mittag_leffler};

/// Stable parameters together with the mass m and a killing rate lambda.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativisticParams {
    pub base: StableParams,
    pub m: f64,
    pub lambda: f64,
}

impl RelativisticParams {
    /// Requires m > 0 and 0 <= lambda < m.
    pub fn new(base: StableParams, m: f64, lambda: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::Domain(format!("mass m = {m} must be positive")));
        }
        if !(lambda >= 0.0 && lambda < m) {
            return Err(Error::Domain(format!("killing rate lambda = {lambda} must lie in [0, m)")));
        }
        Ok(RelativisticParams { base, m, lambda })
    }

    fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.base, self.m, lambda)
    }
}

/// ln of the Bessel-process transition density with respect to
/// mu(dy) = 2^{-d/2} Gamma(d/2 + 1)^{-1} d(y^d).
pub fn ln_bessel_transition_f(d: usize, t: f64, x: f64, y: f64) -> Result<f64> {
    if !(t > 0.0) || !(x >= 0.0) || !(y >= 0.0) {
        return Err(Error::Domain(format!("need t > 0 and radii >= 0, got t={t} x={x} y={y}")));
    }
    let df = d as f64;
    let xy = x * y;
    let z = xy / (2.0 * t);
    if z < 1e-300 {
        return Ok(-0.5 * df * (2.0 * t).ln() - (x * x + y * y) / (4.0 * t));
    }
    let nu = 0.5 * df - 1.0;
    // combine the Gaussian factor with the exponential growth of I
    let li = ln_bessel_i(nu, z)?;
    Ok(ln_gamma(0.5 * df)? - (2.0 * t).ln() + (1.0 - 0.5 * df) * (0.5 * xy).ln() - (x - y).powi(2) / (4.0 * t) + (li - z))
}

/// Bessel-process transition density f(t, x, y).
pub fn bessel_transition_f(d: usize, t: f64, x: f64, y: f64) -> Result<f64> {
    Ok(ln_bessel_transition_f(d, t, x, y)?.exp())
}

/// Density of the reference measure mu on the half-line.
pub fn bessel_reference_density(d: usize, y: f64) -> Result<f64> {
    let df = d as f64;
    Ok((-0.5 * df * std::f64::consts::LN_2 - ln_gamma(0.5 * df + 1.0)?).exp() * df * y.powf(df - 1.0))
}

/// Potential density of the relativistic subordinator.
pub fn subordinator_potential_q_m(rp: &RelativisticParams, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("q_m needs x > 0, got {x}")));
    }
    let a = rp.base.alpha();
    let g = 0.5 * a;
    let l = -rp.m.powf(2.0 / a) * x + (g - 1.0) * x.ln() + ln_mittag_leffler(g, g, rp.m * x.powf(g))?;
    Ok(l.exp())
}

/// ln of the integrand of the lambda-potential at time s.
pub fn ln_potential_integrand(rp: &RelativisticParams, s: f64, x: f64, y: f64) -> Result<f64> {
    let a = rp.base.alpha();
    let g = 0.5 * a;
    Ok(-rp.m.powf(2.0 / a) * s
        + (g - 1.0) * s.ln()
        + ln_bessel_transition_f(rp.base.d(), s, x, y)?
        + ln_mittag_leffler(g, g, (rp.m - rp.lambda) * s.powf(g))?)
}

const REL_TOL: f64 = 1e-10;

/// lambda-potential density u^lambda_m(x, y) of the radial part; lambda = 0
/// gives the potential u_m.
pub fn lambda_potential(rp: &RelativisticParams, x: f64, y: f64) -> Result<f64> {
    let a = rp.base.alpha();
    let d = rp.base.d();
    if !(x >= 0.0 && y >= 0.0) {
        return Err(Error::Domain("radii must be nonnegative".into()));
    }
    if x == 0.0 && y == 0.0 {
        return Err(Error::Divergent("potential at x = y = 0 (integrand ~ s^{a/2-d/2-1} at 0)".into()));
    }
    if x == y && a <= 1.0 {
        return Err(Error::Divergent(format!(
            "potential at x = y diverges for alpha = {a} <= 1 (integrand ~ s^{{(a-3)/2}} at 0)"
        )));
    }
    let kappa = rp.m.powf(2.0 / a) - (rp.m - rp.lambda).powf(2.0 / a);
    if rp.lambda == 0.0 && d <= 2 {
        return Err(Error::Divergent(format!("potential u_m is infinite in dimension d = {d}")));
    }
    // log integrand with the Jacobian folded in, so that extreme substitutions
    // cannot produce 0 * inf
    let h = |s: f64, ln_jac: f64| {
        if !(s > 1e-300) || !s.is_finite() {
            return 0.0;
        }
        ln_potential_integrand(rp, s, x, y).map(|l| (l + ln_jac).exp()).unwrap_or(f64::NAN)
    };

    // (0, 1]
    let near = if a > 1.0 {
        let e = 2.0 / (a - 1.0);
        integrate(|w: f64| h(w.powf(e), e.ln() + (e - 1.0) * w.ln()), 0.0, 1.0, 0.0, REL_TOL, 2000)
    } else {
        // x != y: the Gaussian factor kills the origin
        let lo = ((x - y).powi(2) / 2800.0).max(1e-300).ln();
        integrate(|l: f64| h(l.exp(), l), lo, 0.0, 0.0, REL_TOL, 2000)
    };
    // [1, inf)
    let far = if kappa > 0.0 {
        integrate(|w: f64| h(1.0 - w.ln() / kappa, -(kappa * w).ln()), 0.0, 1.0, 0.0, REL_TOL, 2000)
    } else {
        integrate(|v: f64| h(1.0 / (v * v), std::f64::consts::LN_2 - 3.0 * v.ln()), 0.0, 1.0, 0.0, REL_TOL, 2000)
    };
    let v = near.value + far.value;
    if !v.is_finite() {
        return Err(Error::Divergent("potential integral is not finite".into()));
    }
    Ok(v)
}

/// Probability that the relativistic process from x ever hits the sphere of
/// radius r: 1 in the plane, u_m(|x|, r)/u_m(r, r) for d >= 3.
pub fn hitting_prob_sphere_relativistic(rp: &RelativisticParams, r: f64, x: &[f64]) -> Result<f64> {
    rp.base.require_hitting()?;
    rp.base.check_dim(x, "x")?;
    if !(r > 0.0) {
        return Err(Error::Domain(format!("sphere radius {r} must be positive")));
    }
    if rp.base.d() == 2 {
        return Ok(1.0);
    }
    let q = rp.with_lambda(0.0)?;
    let rx = norm(x);
    Ok(lambda_potential(&q, rx, r)? / lambda_potential(&q, r, r)?)
}

/// E^x[exp(-lambda T); T < inf] for the hitting time T of the sphere of radius r.
pub fn laplace_transform_hit(rp: &RelativisticParams, r: f64, x: &[f64]) -> Result<f64> {
    rp.base.require_hitting()?;
    rp.base.check_dim(x, "x")?;
    if !(rp.lambda > 0.0) {
        return Err(Error::Domain("Laplace transform form needs lambda in (0, m)".into()));
    }
    let rx = norm(x);
    Ok(lambda_potential(rp, rx, r)? / lambda_potential(rp, r, r)?)
}

/// Density of the exit position onto the hyperplane, killed at rate m:
/// C4 |x_d|^{a-1} rho^{-nu} K_nu(m^{1/a} rho), nu = (d + a - 2)/2.
pub fn poisson_kernel_h_relativistic(rp: &RelativisticParams, x: &HalfspacePoint, ybar: &[f64]) -> Result<f64> {
    let p = &rp.base;
    p.require_hitting()?;
    if x.bar.len() + 1 != p.d() || ybar.len() + 1 != p.d() {
        return Err(Error::Domain("dimension mismatch".into()));
    }
    if x.last == 0.0 {
        return Err(Error::Singular("x lies on the hyperplane".into()));
    }
    let a = p.alpha();
    let nu = 0.5 * (p.d() as f64 + a - 2.0);
    let rho = (x.bar.iter().zip(ybar).map(|(u, v)| (u - v) * (u - v)).sum::<f64>() + x.last * x.last).sqrt();
    let l = c4(p, rp.m)?.ln() + (a - 1.0) * x.last.abs().ln() - nu * rho.ln() + ln_bessel_k(nu, rp.m.powf(1.0 / a) * rho)?;
    Ok(l.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(d: usize, a: f64, m: f64, l: f64) -> RelativisticParams {
        RelativisticParams::new(StableParams::new(d, a).unwrap(), m, l).unwrap()
    }

    #[test]
    fn transition_symmetric_and_limit() {
        for &(t, x, y) in &[(0.3, 1.0, 2.0), (5.0, 0.1, 3.0), (1e-3, 1.0, 1.01)] {
            let a = bessel_transition_f(3, t, x, y).unwrap();
            let b = bessel_transition_f(3, t, y, x).unwrap();
            assert!((a / b - 1.0).abs() < 1e-13);
        }
        let at0 = bessel_transition_f(3, 0.7, 0.0, 0.0).unwrap();
        let near = bessel_transition_f(3, 0.7, 1e-6, 1e-6).unwrap();
        assert!((near / at0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn stable_limit_of_q_m() {
        let r = rp(3, 1.5, 1e-12, 0.0);
        for &x in &[0.1, 1.0, 7.0] {
            let v = subordinator_potential_q_m(&r, x).unwrap();
            let e = x.powf(-0.25) / crate::specfun::gamma(0.75).unwrap();
            assert!((v / e - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn divergence_errors() {
        assert!(matches!(lambda_potential(&rp(3, 0.9, 1.0, 0.5), 1.0, 1.0), Err(Error::Divergent(_))));
        assert!(matches!(lambda_potential(&rp(2, 1.5, 1.0, 0.0), 1.0, 2.0), Err(Error::Divergent(_))));
        assert!(matches!(lambda_potential(&rp(3, 1.5, 1.0, 0.5), 0.0, 0.0), Err(Error::Divergent(_))));
        assert!(RelativisticParams::new(StableParams::new(3, 1.5).unwrap(), 1.0, 1.0).is_err());
    }

    #[test]
    fn plane_hits_everything() {
        let r = rp(2, 1.5, 1.0, 0.0);
        assert_eq!(hitting_prob_sphere_relativistic(&r, 1.0, &[5.0, 3.0]).unwrap(), 1.0);
    }

    #[test]
    fn transition_normalized() {
        for &d in &[2usize, 3, 5] {
            for &(t, x) in &[(0.5f64, 0.0f64), (0.2, 1.5), (3.0, 2.0)] {
                let hi = x + 60.0 * t.sqrt();
                let q = integrate(
                    |y: f64| bessel_transition_f(d, t, x, y).unwrap() * bessel_reference_density(d, y).unwrap(),
                    0.0,
                    hi,
                    0.0,
                    1e-12,
                    2000,
                );
                assert!((q.value - 1.0).abs() < 1e-9, "d={d} t={t} x={x} {}", q.value);
            }
        }
    }

    #[test]
    fn q_m_matches_direct_series() {
        let r = rp(3, 1.5, 1.0, 0.0);
        let mut e = 0.0;
        for k in 0..200 {
            e += 1.0 / crate::specfun::gamma(0.75 * k as f64 + 0.75).unwrap();
        }
        let v = subordinator_potential_q_m(&r, 1.0).unwrap();
        assert!((v / ((-1.0f64).exp() * e) - 1.0).abs() < 1e-12);
        assert!(subordinator_potential_q_m(&r, 0.0).is_err());
    }

    #[test]
    fn potential_symmetric_and_finite() {
        let r = rp(3, 1.5, 1.0, 0.5);
        let v = lambda_potential(&r, 1.0, 1.0).unwrap();
        assert!(v.is_finite() && v > 0.0);
        let a = lambda_potential(&r, 0.7, 2.1).unwrap();
        let b = lambda_potential(&r, 2.1, 0.7).unwrap();
        assert!((a / b - 1.0).abs() < 1e-8);
        let z = lambda_potential(&r, 0.0, 1.3).unwrap();
        assert!(z.is_finite() && z > 0.0);
    }

    #[test]
    fn relativistic_hitting_values() {
        let r = rp(3, 1.5, 1.0, 0.0);
        assert!((hitting_prob_sphere_relativistic(&r, 1.0, &[0.0, 1.0, 0.0]).unwrap() - 1.0).abs() < 1e-12);
        let h2 = hitting_prob_sphere_relativistic(&r, 1.0, &[2.0, 0.0, 0.0]).unwrap();
        let h4 = hitting_prob_sphere_relativistic(&r, 1.0, &[0.0, 0.0, 4.0]).unwrap();
        assert!(h2 > 0.0 && h2 < 1.0);
        assert!(h4 < h2);
        let h0 = hitting_prob_sphere_relativistic(&r, 1.0, &[0.0, 0.0, 0.0]).unwrap();
        assert!(h0 > 0.0 && h0 <= 1.0);
    }

    #[test]
    fn laplace_transform_nonincreasing_in_lambda() {
        let x = [1.8, 0.0, 0.0];
        let mut prev = f64::INFINITY;
        for &l in &[0.05, 0.2, 0.5, 0.9] {
            let v = laplace_transform_hit(&rp(3, 1.5, 1.0, l), 1.0, &x).unwrap();
            assert!(v > 0.0 && v < 1.0);
            assert!(v <= prev + 1e-10);
            prev = v;
        }
    }

    #[test]
    fn integrand_slopes() {
        let r = rp(3, 1.5, 1.0, 0.5);
        // s -> 0 at x = y: slope (alpha - 3)/2
        let l = |s: f64| ln_potential_integrand(&r, s, 1.0, 1.0).unwrap();
        let slope = (l(1e-6) - l(1e-8)) / (1e-6f64.ln() - 1e-8f64.ln());
        assert!((slope + 0.75).abs() < 0.02 * 0.75, "{slope}");
        // s -> infinity after removing the exponential decay: slope -d/2
        let kappa = 1.0f64 - 0.5f64.powf(2.0 / 1.5);
        let g = |s: f64| ln_potential_integrand(&r, s, 1.0, 1.0).unwrap() + kappa * s;
        let slope = (g(1e6) - g(1e4)) / (1e6f64.ln() - 1e4f64.ln());
        assert!((slope + 1.5).abs() < 0.02 * 1.5, "{slope}");
    }

    #[test]
    fn halfspace_kernel_stable_limit_and_mass() {
        let p = StableParams::new(2, 1.5).unwrap();
        let x = HalfspacePoint::new(vec![0.3], 1.0);
        for &y in &[-2.0, 0.0, 0.5, 10.0] {
            let a = poisson_kernel_h_relativistic(&RelativisticParams::new(p, 1e-10, 0.0).unwrap(), &x, &[y]).unwrap();
            let b = crate::halfspace::poisson_kernel_h(&p, &x, &[y]).unwrap();
            assert!((a / b - 1.0).abs() < 1e-3);
        }
        let r = RelativisticParams::new(p, 1.0, 0.0).unwrap();
        let e = HalfspacePoint::new(vec![0.0], 1.0);
        let mass = integrate(
            |t: f64| {
                let y = t.tan();
                poisson_kernel_h_relativistic(&r, &e, &[y]).unwrap() / t.cos().powi(2)
            },
            -std::f64::consts::FRAC_PI_2 + 1e-12,
            std::f64::consts::FRAC_PI_2 - 1e-12,
            0.0,
            1e-10,
            2000,
        );
        assert!(mass.value < 1.0 && mass.value > 0.0, "{}", mass.value);
    }
}
