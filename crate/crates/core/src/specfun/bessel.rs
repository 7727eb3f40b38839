use super::gamma::ln_gamma;
use crate::error::{Error, Result};

const LN_MAX: f64 = 709.78;

fn series_ln_i(nu: f64, x: f64) -> Result<f64> {
    let q = 0.25 * x * x;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut k = 0.0f64;
    loop {
        k += 1.0;
        term *= q / (k * (nu + k));
        sum += term;
        if term < 1e-17 * sum && k > q.sqrt() {
            break;
        }
        if k > 5000.0 {
            return Err(Error::NonConvergence { terms: 5000 });
        }
    }
    Ok(nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)? + sum.ln())
}

fn asymptotic_ln_i(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut k = 1.0f64;
    loop {
        let next = -term * (mu - (2.0 * k - 1.0).powi(2)) / (k * 8.0 * x);
        if next.abs() >= term.abs() || next.abs() < 1e-17 * sum.abs() {
            if next.abs() < term.abs() {
                sum += next;
            }
            break;
        }
        sum += next;
        term = next;
        k += 1.0;
    }
    x - 0.5 * (2.0 * std::f64::consts::PI * x).ln() + sum.ln()
}

/// ln I_nu(x) for nu > -1 and x > 0.
pub fn ln_bessel_i(nu: f64, x: f64) -> Result<f64> {
    if !(nu > -1.0) || x < 0.0 || x.is_nan() {
        return Err(Error::Domain(format!("I_nu requires nu > -1 and x >= 0, got nu={nu} x={x}")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    if x > 30.0 && x > 2.0 * nu * nu {
        Ok(asymptotic_ln_i(nu, x))
    } else {
        series_ln_i(nu, x)
    }
}

/// Modified Bessel function of the first kind I_nu(x).
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    let l = ln_bessel_i(nu, x)?;
    if l > LN_MAX {
        return Err(Error::Overflow(format!("I_{nu}({x})")));
    }
    Ok(l.exp())
}

/// e^z K_nu(z), from the representation int_0^inf exp(-z(cosh u - 1)) cosh(nu u) du
/// with trapezoid halving; the integrand is entire in u so the rule converges
/// geometrically.
pub fn bessel_k_scaled(nu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("K_nu requires z > 0, got {z}")));
    }
    let nu = nu.abs();
    let ln_g = |u: f64| -2.0 * z * (0.5 * u).sinh().powi(2) + nu * u;
    // right end where the log integrand drops below -45
    let mut upper = 1.0f64;
    while ln_g(upper) > -45.0 || upper < 2.0 {
        upper *= 1.5;
        if upper > 1e4 {
            return Err(Error::Domain("K_nu integrand does not decay".into()));
        }
    }
    let g = |u: f64| {
        let c = (nu * u).cosh();
        (-2.0 * z * (0.5 * u).sinh().powi(2)).exp() * c
    };
    let mut n = 16usize;
    let mut h = upper / n as f64;
    let mut sum = 0.5 * (g(0.0) + g(upper));
    for i in 1..n {
        sum += g(i as f64 * h);
    }
    let mut est = sum * h;
    for _ in 0..20 {
        let mut add = 0.0;
        for i in 0..n {
            add += g((i as f64 + 0.5) * h);
        }
        sum += add;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        if (next - est).abs() <= 1e-15 * next.abs() {
            return Ok(next);
        }
        est = next;
    }
    Err(Error::NonConvergence { terms: n })
}

/// ln K_nu(z).
pub fn ln_bessel_k(nu: f64, z: f64) -> Result<f64> {
    Ok(bessel_k_scaled(nu, z)?.ln() - z)
}

/// Modified Bessel function of the second kind K_nu(z), z > 0.
pub fn bessel_k(nu: f64, z: f64) -> Result<f64> {
    Ok(ln_bessel_k(nu, z)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn half_order_closed_forms() {
        for &x in &[0.01, 0.5, 3.0, 29.0, 31.0, 80.0, 400.0] {
            // I_{1/2}(x) = sqrt(2/(pi x)) sinh x
            let l = ln_bessel_i(0.5, x).unwrap();
            let e = (2.0 / (PI * x)).sqrt().ln() + x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2;
            assert!((l - e).abs() < 1e-13 * e.abs().max(1.0), "x={x}: {l} {e}");
            // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
            let k = bessel_k_scaled(0.5, x).unwrap();
            let e = (PI / (2.0 * x)).sqrt();
            assert!((k / e - 1.0).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn integer_order_values() {
        // reference values
        assert!((bessel_i(0.0, 1.0).unwrap() - 1.266_065_877_752_008_4).abs() < 1e-15);
        assert!((bessel_i(1.0, 2.0).unwrap() - 1.590_636_854_637_329).abs() < 1e-14);
        assert!((bessel_k(0.0, 1.0).unwrap() - 0.421_024_438_240_708_3).abs() < 1e-15);
        assert!((bessel_k(1.0, 0.1).unwrap() - 9.853_844_780_870_606).abs() < 1e-12);
    }

    #[test]
    fn wronskian() {
        // I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x
        for &nu in &[0.0, 0.25, 1.0, 1.75] {
            for &x in &[0.05, 1.0, 10.0, 45.0] {
                let w = (ln_bessel_i(nu, x).unwrap() + ln_bessel_k(nu + 1.0, x).unwrap()).exp()
                    + (ln_bessel_i(nu + 1.0, x).unwrap() + ln_bessel_k(nu, x).unwrap()).exp();
                assert!((w * x - 1.0).abs() < 1e-12, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn overflow_and_domain() {
        assert!(matches!(bessel_i(0.0, 800.0), Err(Error::Overflow(_))));
        assert!(ln_bessel_i(0.0, 800.0).is_ok());
        assert!(matches!(bessel_k(0.0, 0.0), Err(Error::Domain(_))));
    }
}
