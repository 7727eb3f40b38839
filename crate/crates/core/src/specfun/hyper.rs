use super::gamma::{ln_gamma, gamma_sign, ln_rgamma};
use super::SeriesControl;
use crate::error::{Error, Result};

fn check_c(c: f64) -> Result<()> {
    if c <= 0.0 && c == c.floor() {
        return Err(Error::Domain(format!("2F1 lower parameter c = {c} is a nonpositive integer")));
    }
    Ok(())
}

/// Sum of the hypergeometric terms with index >= `start`.
///
/// The tail after truncation is bounded by the geometric majorant once the
/// term ratio has settled, so the stopping rule is a bound rather than a
/// heuristic on the last term.
pub fn gauss_2f1_tail(a: f64, b: f64, c: f64, s: f64, start: usize, ctl: SeriesControl) -> Result<f64> {
    check_c(c)?;
    if !(s.abs() < 1.0) {
        return Err(Error::Domain(format!("2F1 argument |s| = {} must be below 1", s.abs())));
    }
    let settle = (a.abs() + b.abs() + c.abs()) as usize + 2;
    let mut term = 1.0f64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in 0..ctl.max_terms {
        if n >= start {
            // Neumaier summation
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        }
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * s;
        let next = term * ratio;
        if next == 0.0 {
            return Ok(sum + comp);
        }
        if n + 1 >= start && n >= settle {
            let nf1 = nf + 1.0;
            let r1 = ((a + nf1) * (b + nf1) / ((c + nf1) * (nf1 + 1.0)) * s).abs();
            let q = r1.max(s.abs());
            if q < 1.0 {
                let tail = next.abs() / (1.0 - q);
                if tail <= ctl.rel_tol * (sum + comp).abs() {
                    return Ok(sum + comp);
                }
            }
        }
        term = next;
        if !term.is_finite() {
            return Err(Error::Overflow("2F1 term".into()));
        }
    }
    Err(Error::NonConvergence { terms: ctl.max_terms })
}

/// Gauss hypergeometric function 2F1(a, b; c; s) for |s| < 1.
pub fn gauss_2f1(a: f64, b: f64, c: f64, s: f64, ctl: SeriesControl) -> Result<f64> {
    gauss_2f1_tail(a, b, c, s, 0, ctl)
}

/// Which representation [`legendre_p_with`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegendreRoute {
    /// Pick whichever series has the smaller argument.
    Auto,
    /// Series in (t-1)/(t+1), convergent for every t > 1.
    Near,
    /// Two-term connection series in 2/(1+t), fast for large t.
    Far,
}

/// Associated Legendre function of the first kind P^mu_nu(t) for t > 1.
pub fn legendre_p(mu: f64, nu: f64, t: f64, ctl: SeriesControl) -> Result<f64> {
    legendre_p_with(mu, nu, t, LegendreRoute::Auto, ctl)
}

pub fn legendre_p_with(mu: f64, nu: f64, t: f64, route: LegendreRoute, ctl: SeriesControl) -> Result<f64> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(Error::Domain(format!("Legendre argument t = {t} must be finite and > 1")));
    }
    let z = (t - 1.0) / (t + 1.0);
    let far_ok = {
        let alpha = -2.0 * nu;
        alpha != alpha.round()
    };
    let use_far = match route {
        LegendreRoute::Near => false,
        LegendreRoute::Far => {
            if !far_ok {
                return Err(Error::Domain("connection series needs a non-integer 2 nu".into()));
            }
            true
        }
        LegendreRoute::Auto => far_ok && z > 0.5,
    };
    if use_far {
        far_series(mu, nu, t, ctl)
    } else {
        near_series(mu, nu, t, z, ctl)
    }
}

fn near_series(mu: f64, nu: f64, t: f64, z: f64, ctl: SeriesControl) -> Result<f64> {
    // P = (1/G(1-mu)) ((t+1)/(t-1))^{mu/2} ((t+1)/2)^nu F(-nu, -mu-nu; 1-mu; (t-1)/(t+1))
    let (lr, sr) = ln_rgamma(1.0 - mu);
    if sr == 0.0 {
        return Ok(0.0);
    }
    let f = gauss_2f1(-nu, -mu - nu, 1.0 - mu, z, ctl)?;
    let lp = lr - 0.5 * mu * z.ln() + nu * (0.5 * (t + 1.0)).ln();
    Ok(sr * lp.exp() * f)
}

/// Coefficients (f1, f2) of the connection formula
/// P^{1-d/2}_{-a/2}(t) = f1 F(1-a/2, (d-a)/2; 2-a; s) + f2 F(a/2, (d+a)/2-1; a; s),
/// s = 2/(1+t). A coefficient whose gamma factor has a pole is zero.
pub fn legendre_connection(d: f64, alpha: f64, t: f64) -> Result<(f64, f64)> {
    if !(t > 1.0) {
        return Err(Error::Domain(format!("connection formula needs t > 1, got {t}")));
    }
    let ln2 = std::f64::consts::LN_2;
    let lp = (t + 1.0).ln();
    let lm = (t - 1.0).ln();
    let mut f1 = 0.0;
    let (r1, s1) = ln_rgamma(0.5 * alpha);
    let (r2, s2) = ln_rgamma(0.5 * (alpha + d) - 1.0);
    if s1 != 0.0 && s2 != 0.0 {
        let g = ln_gamma(alpha - 1.0)?;
        let lf = (1.0 - 0.5 * alpha) * ln2 + g + r1 + r2 + (0.5 * alpha - 0.25 * d - 0.5) * lp + (0.25 * d - 0.5) * lm;
        f1 = gamma_sign(alpha - 1.0) * s1 * s2 * lf.exp();
    }
    let mut f2 = 0.0;
    let (r3, s3) = ln_rgamma(1.0 - 0.5 * alpha);
    let (r4, s4) = ln_rgamma(0.5 * (d - alpha));
    if s3 != 0.0 && s4 != 0.0 {
        let g = ln_gamma(1.0 - alpha)?;
        let lf = 0.5 * alpha * ln2 + g + r3 + r4 + (0.5 - 0.25 * d - 0.5 * alpha) * lp + (0.25 * d - 0.5) * lm;
        f2 = gamma_sign(1.0 - alpha) * s3 * s4 * lf.exp();
    }
    Ok((f1, f2))
}

fn far_series(mu: f64, nu: f64, t: f64, ctl: SeriesControl) -> Result<f64> {
    let d = 2.0 * (1.0 - mu);
    let alpha = -2.0 * nu;
    let s = 2.0 / (1.0 + t);
    let (f1, f2) = legendre_connection(d, alpha, t)?;
    let mut out = 0.0;
    if f1 != 0.0 {
        out += f1 * gauss_2f1(1.0 - 0.5 * alpha, 0.5 * (d - alpha), 2.0 - alpha, s, ctl)?;
    }
    if f2 != 0.0 {
        out += f2 * gauss_2f1(0.5 * alpha, 0.5 * (d + alpha) - 1.0, alpha, s, ctl)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn elementary_closed_forms() {
        // 2F1(1,1;2;s) = -ln(1-s)/s
        for &s in &[-0.9, -0.3, 0.1, 0.5, 0.9, 0.99] {
            let v = gauss_2f1(1.0, 1.0, 2.0, s, ctl()).unwrap();
            let e = -(-s).ln_1p() / s;
            assert!((v / e - 1.0).abs() < 1e-12, "s={s}");
        }
        // 2F1(a,b;b;s) = (1-s)^-a
        let v = gauss_2f1(0.7, 1.3, 1.3, 0.6, ctl()).unwrap();
        assert!((v / 0.4f64.powf(-0.7) - 1.0).abs() < 1e-12);
        // 2F1(1/2,1/2;3/2;s^2) = asin(s)/s
        let s = 0.8f64;
        let v = gauss_2f1(0.5, 0.5, 1.5, s * s, ctl()).unwrap();
        assert!((v - s.asin() / s).abs() < 1e-12);
    }

    #[test]
    fn polynomial_terminates() {
        // 2F1(-2, b; c; s) = 1 - 2bs/c + b(b+1)s^2/(c(c+1))
        let (b, c, s) = (1.5, 2.5, 0.3);
        let v = gauss_2f1(-2.0, b, c, s, ctl()).unwrap();
        let e = 1.0 - 2.0 * b * s / c + b * (b + 1.0) * s * s / (c * (c + 1.0));
        assert!((v - e).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(gauss_2f1(1.0, 1.0, -2.0, 0.3, ctl()), Err(Error::Domain(_))));
        assert!(matches!(gauss_2f1(1.0, 1.0, 2.0, 1.0, ctl()), Err(Error::Domain(_))));
        let tight = SeriesControl { rel_tol: 1e-13, max_terms: 5 };
        assert!(matches!(gauss_2f1(0.3, 0.4, 1.2, 0.95, tight), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn legendre_zero_order_closed_form() {
        // P^{1/2}_{-1/2}(cosh x) = sqrt(2/(pi sinh x))
        for &x in &[0.3, 1.0, 2.5] {
            let t = f64::cosh(x);
            let v = legendre_p(0.5, -0.5, t, ctl()).unwrap();
            let e = (2.0 / (std::f64::consts::PI * x.sinh())).sqrt();
            assert!((v / e - 1.0).abs() < 1e-12, "x={x}");
        }
        // P^{-1/2}_{nu}(cosh x) = sqrt(2/(pi sinh x)) sinh((nu+1/2)x)/(nu+1/2)
        let nu = -0.75;
        for &x in &[0.2, 1.2, 3.0] {
            let t = f64::cosh(x);
            let v = legendre_p_with(-0.5, nu, t, LegendreRoute::Near, ctl()).unwrap();
            let e = (2.0 / (std::f64::consts::PI * x.sinh())).sqrt() * ((nu + 0.5) * x).sinh() / (nu + 0.5);
            assert!((v / e - 1.0).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn routes_agree() {
        for &(d, alpha) in &[(2.0, 1.5), (3.0, 1.2), (3.0, 1.8), (4.0, 0.7), (5.0, 1.5)] {
            let mu = 1.0 - 0.5 * d;
            let nu = -0.5 * alpha;
            for &t in &[1.5, 2.0, 3.0, 5.0, 20.0] {
                let a = legendre_p_with(mu, nu, t, LegendreRoute::Near, ctl()).unwrap();
                let b = legendre_p_with(mu, nu, t, LegendreRoute::Far, ctl()).unwrap();
                assert!((a / b - 1.0).abs() < 1e-11, "d={d} alpha={alpha} t={t}: {a} {b}");
            }
        }
    }
}
