use crate::error::{Error, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(pi x) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    let (sgn, r) = if r > 1.0 { (-1.0, r - 1.0) } else { (1.0, r) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sgn * (PI * r).sin()
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn ln_gamma_pos(x: f64) -> f64 {
    // Lanczos for x >= 0.5
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// ln |Gamma(x)|. Fails with [`Error::Pole`] at the nonpositive integers.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("ln_gamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if x < 0.5 {
        Ok(PI.ln() - sin_pi(x).abs().ln() - ln_gamma_pos(1.0 - x))
    } else {
        Ok(ln_gamma_pos(x))
    }
}

/// Sign of Gamma(x); zero at the poles.
pub fn gamma_sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if is_pole(x) {
        0.0
    } else if (x.floor() as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Gamma(x).
pub fn gamma(x: f64) -> Result<f64> {
    let l = ln_gamma(x)?;
    if l > 709.78 {
        return Err(Error::Overflow(format!("Gamma({x})")));
    }
    Ok(gamma_sign(x) * l.exp())
}

/// (ln |1/Gamma(x)|, sign of 1/Gamma(x)); the sign is 0 at the poles where
/// the reciprocal vanishes.
pub fn ln_rgamma(x: f64) -> (f64, f64) {
    match ln_gamma(x) {
        Ok(l) => (-l, gamma_sign(x)),
        Err(_) => (f64::NEG_INFINITY, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        let mut f = 1.0f64;
        for n in 1..30 {
            f *= n as f64;
            let g = gamma(n as f64 + 1.0).unwrap();
            assert!((g / f - 1.0).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn half_integers() {
        let g = gamma(0.5).unwrap();
        assert!((g - PI.sqrt()).abs() < 1e-14);
        let g = gamma(-0.5).unwrap();
        assert!((g + 2.0 * PI.sqrt()).abs() < 1e-13);
        let g = gamma(-1.5).unwrap();
        assert!((g - 4.0 / 3.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn poles() {
        assert_eq!(ln_gamma(0.0), Err(Error::Pole(0.0)));
        assert_eq!(ln_gamma(-3.0), Err(Error::Pole(-3.0)));
        assert_eq!(gamma_sign(-3.0), 0.0);
        assert_eq!(ln_rgamma(-2.0).1, 0.0);
    }

    #[test]
    fn reflection_matches_recurrence() {
        for &x in &[-2.7, -1.3, -0.2, 0.1, 0.3] {
            let lhs = gamma(x).unwrap();
            let rhs = gamma(x + 1.0).unwrap() / x;
            assert!((lhs / rhs - 1.0).abs() < 1e-13, "x={x}");
        }
    }
}
