//! Kernels of the stable process relative to the hyperplane x_d = 0, and the
//! inversions linking the hyperplane complement to the sphere complement.

use crate::error::{Error, Result};
use crate::params::{norm, BoundaryPoint, ExtPoint, HalfspacePoint, PointD, StableParams};
use crate::sphere::one_minus_phi_from_gap;

fn check_h(p: &StableParams, x: &HalfspacePoint, what: &str) -> Result<()> {
    p.require_hitting()?;
    if x.bar.len() + 1 != p.d() {
        return Err(Error::Domain(format!("{what} has dimension {}, expected {}", x.bar.len() + 1, p.d())));
    }
    if x.last == 0.0 || !x.last.is_finite() || x.bar.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("{what} must lie off the hyperplane")));
    }
    Ok(())
}

fn check_bar(p: &StableParams, y: &[f64]) -> Result<()> {
    if y.len() + 1 != p.d() {
        return Err(Error::Domain(format!("boundary point has length {}, expected {}", y.len(), p.d() - 1)));
    }
    Ok(())
}

/// |x - (y_bar, 0)|^2
fn dist2_to_plane_point(x: &HalfspacePoint, y: &[f64]) -> f64 {
    let b: f64 = x.bar.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    b + x.last * x.last
}

/// Shape |x_d|^{a-1} / |x - y|^{d+a-2} shared by the Poisson and Martin kernels.
pub(crate) fn halfspace_shape(d: usize, alpha: f64, xd: f64, r2: f64) -> f64 {
    let d = d as f64;
    ((alpha - 1.0) * xd.abs().ln() - 0.5 * (d + alpha - 2.0) * r2.ln()).exp()
}

/// Hitting density of the hyperplane with respect to Lebesgue measure on R^{d-1}.
pub fn poisson_kernel_h(p: &StableParams, x: &HalfspacePoint, ybar: &[f64]) -> Result<f64> {
    check_h(p, x, "x")?;
    check_bar(p, ybar)?;
    let r2 = dist2_to_plane_point(x, ybar);
    Ok(p.constants().c3 * halfspace_shape(p.d(), p.alpha(), x.last, r2))
}

/// Density of the harmonic measure seen from e_d.
pub fn omega_alpha_density(p: &StableParams, xbar: &[f64]) -> Result<f64> {
    let e = HalfspacePoint::new(vec![0.0; p.d() - 1], 1.0);
    poisson_kernel_h(p, &e, xbar)
}

/// Green function of the hyperplane complement.
pub fn green_h(p: &StableParams, x: &HalfspacePoint, y: &HalfspacePoint) -> Result<f64> {
    check_h(p, x, "x")?;
    check_h(p, y, "y")?;
    let mut r2: f64 = x.bar.iter().zip(&y.bar).map(|(a, b)| (a - b) * (a - b)).sum();
    r2 += (x.last - y.last).powi(2);
    if r2 == 0.0 {
        return Err(Error::Singular("x = y".into()));
    }
    let g = 4.0 * x.last * y.last / r2;
    let d = p.d() as f64;
    Ok(p.constants().a_d_alpha * r2.powf(0.5 * (p.alpha() - d)) * one_minus_phi_from_gap(p, g)?.max(0.0))
}

/// Martin kernel of the hyperplane complement, normalized at e_d.
pub fn martin_h(p: &StableParams, x: &HalfspacePoint, z: &BoundaryPoint) -> Result<f64> {
    check_h(p, x, "x")?;
    match z {
        BoundaryPoint::Finite(z) => {
            check_bar(p, z)?;
            let r2 = dist2_to_plane_point(x, z);
            let e2 = 1.0 + z.iter().map(|v| v * v).sum::<f64>();
            let d = p.d() as f64;
            Ok(halfspace_shape(p.d(), p.alpha(), x.last, r2) * e2.powf(0.5 * (d + p.alpha() - 2.0)))
        }
        BoundaryPoint::Infinity => Ok(x.last.abs().powf(p.alpha() - 1.0)),
    }
}

/// The two inversions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inversion {
    /// x -> x/|x|^2
    T,
    /// x -> 2 T(x + e_d) - e_d, swapping the sphere complement and the hyperplane complement
    TTilde,
}

fn t_map(x: &ExtPoint) -> ExtPoint {
    match x {
        ExtPoint::Infinity => ExtPoint::Finite(PointD(Vec::new())),
        ExtPoint::Finite(v) => {
            let n2: f64 = v.0.iter().map(|c| c * c).sum();
            if n2 == 0.0 {
                ExtPoint::Infinity
            } else {
                ExtPoint::Finite(PointD(v.0.iter().map(|c| c / n2).collect()))
            }
        }
    }
}

/// Apply an inversion in R^d; `d` is only used to materialize the origin when
/// the image of infinity is requested.
pub fn invert(which: Inversion, d: usize, x: &ExtPoint) -> ExtPoint {
    let fix = |e: ExtPoint| match e {
        ExtPoint::Finite(v) if v.0.is_empty() => ExtPoint::Finite(PointD(vec![0.0; d])),
        other => other,
    };
    match which {
        Inversion::T => fix(t_map(x)),
        Inversion::TTilde => {
            let shifted = match x {
                ExtPoint::Infinity => ExtPoint::Infinity,
                ExtPoint::Finite(v) => {
                    let mut w = v.0.clone();
                    *w.last_mut().expect("nonempty") += 1.0;
                    ExtPoint::Finite(PointD(w))
                }
            };
            match fix(t_map(&shifted)) {
                ExtPoint::Infinity => ExtPoint::Infinity,
                ExtPoint::Finite(v) => {
                    let mut w: Vec<f64> = v.0.iter().map(|c| 2.0 * c).collect();
                    *w.last_mut().expect("nonempty") -= 1.0;
                    ExtPoint::Finite(PointD(w))
                }
            }
        }
    }
}

/// Finite-point convenience wrapper around [`invert`]; errors at the pole.
pub fn invert_point(which: Inversion, x: &[f64]) -> Result<Vec<f64>> {
    match invert(which, x.len(), &ExtPoint::Finite(PointD(x.to_vec()))) {
        ExtPoint::Finite(v) => Ok(v.0),
        ExtPoint::Infinity => Err(Error::Singular("inversion pole".into())),
    }
}

/// The two Kelvin transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kelvin {
    /// |x|^{a-d} u(Tx)
    KAlpha,
    /// s |x + e_d|^{a-d} u(T~x)
    KTildeAlpha,
}

/// Constant in front of the shifted Kelvin transform.
///
/// Applied to both arguments of a two-point kernel, `HalfPower` reproduces the
/// Green function relation between the hyperplane and sphere complements.
/// Applied to one argument of a ratio normalized at e_d, `FullPower` is what
/// the Martin kernel relation needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KelvinScaling {
    /// 2^{(d-a)/2}
    HalfPower,
    /// 2^{d-a}
    FullPower,
}

impl KelvinScaling {
    pub fn factor(self, p: &StableParams) -> f64 {
        let e = p.d() as f64 - p.alpha();
        match self {
            KelvinScaling::HalfPower => 2f64.powf(0.5 * e),
            KelvinScaling::FullPower => 2f64.powf(e),
        }
    }
}

/// Multiplier s |x + e_d|^{a-d} of the shifted Kelvin transform at x.
pub fn kelvin_tilde_weight(p: &StableParams, scaling: KelvinScaling, x: &[f64]) -> Result<f64> {
    p.check_dim(x, "x")?;
    let mut s = x.to_vec();
    *s.last_mut().expect("nonempty") += 1.0;
    let n = norm(&s);
    if n == 0.0 {
        return Err(Error::Singular("x = -e_d".into()));
    }
    Ok(scaling.factor(p) * n.powf(p.alpha() - p.d() as f64))
}

/// Evaluate a Kelvin transform of `u` at x.
pub fn kelvin<F>(which: Kelvin, p: &StableParams, scaling: KelvinScaling, u: F, x: &[f64]) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    p.check_dim(x, "x")?;
    match which {
        Kelvin::KAlpha => {
            let n = norm(x);
            if n == 0.0 {
                return Err(Error::Singular("Kelvin transform at the origin".into()));
            }
            let tx = invert_point(Inversion::T, x)?;
            Ok(n.powf(p.alpha() - p.d() as f64) * u(&tx))
        }
        Kelvin::KTildeAlpha => {
            let w = kelvin_tilde_weight(p, scaling, x)?;
            let tx = invert_point(Inversion::TTilde, x)?;
            Ok(w * u(&tx))
        }
    }
}

/// Green function of the hyperplane complement computed through the shifted
/// inversion and the sphere-complement Green function.
pub fn green_h_via_sphere(p: &StableParams, scaling: KelvinScaling, x: &[f64], y: &[f64]) -> Result<f64> {
    let tx = invert_point(Inversion::TTilde, x)?;
    let ty = invert_point(Inversion::TTilde, y)?;
    let wx = kelvin_tilde_weight(p, scaling, x)?;
    let wy = kelvin_tilde_weight(p, scaling, y)?;
    Ok(wx * wy * crate::sphere::green_d(p, &tx, &ty)?)
}

/// Martin kernel of the hyperplane complement computed through the shifted
/// inversion and the sphere-complement Martin kernel.
pub fn martin_h_via_sphere(p: &StableParams, scaling: KelvinScaling, x: &[f64], z: &[f64]) -> Result<f64> {
    let tx = invert_point(Inversion::TTilde, x)?;
    let mut zp = z.to_vec();
    zp.push(0.0);
    let tz = invert_point(Inversion::TTilde, &zp)?;
    let w = kelvin_tilde_weight(p, scaling, x)?;
    Ok(w * crate::sphere::martin_d(p, &tx, &BoundaryPoint::Finite(tz))?)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, a: f64) -> StableParams {
        StableParams::new(d, a).unwrap()
    }

    #[test]
    fn omega_at_origin() {
        let q = p(3, 1.4);
        assert!((omega_alpha_density(&q, &[0.0, 0.0]).unwrap() - q.constants().c3).abs() < 1e-15);
    }

    #[test]
    fn martin_values() {
        let q = p(2, 1.5);
        let e = HalfspacePoint::new(vec![0.0], 1.0);
        assert!((martin_h(&q, &e, &BoundaryPoint::Finite(vec![3.3])).unwrap() - 1.0).abs() < 1e-14);
        let x = HalfspacePoint::new(vec![0.0], 2.0);
        assert!((martin_h(&q, &x, &BoundaryPoint::Infinity).unwrap() - 2f64.powf(0.5)).abs() < 1e-15);
    }

    #[test]
    fn inversion_fixed_points() {
        let t = invert(Inversion::TTilde, 3, &ExtPoint::Finite(PointD(vec![0.0, 0.0, 1.0])));
        assert_eq!(t, ExtPoint::Finite(PointD(vec![0.0, 0.0, 0.0])));
        let t = invert(Inversion::TTilde, 2, &ExtPoint::Finite(PointD(vec![0.0, -1.0])));
        assert_eq!(t, ExtPoint::Infinity);
        let t = invert(Inversion::TTilde, 2, &ExtPoint::Infinity);
        assert_eq!(t, ExtPoint::Finite(PointD(vec![0.0, -1.0])));
        assert_eq!(invert(Inversion::T, 2, &ExtPoint::Infinity), ExtPoint::Finite(PointD(vec![0.0, 0.0])));
    }

    #[test]
    fn kelvin_of_coordinate() {
        let q = p(2, 1.5);
        let x = [0.3, -0.7];
        let v = kelvin(Kelvin::KAlpha, &q, KelvinScaling::HalfPower, |y| y[0], &x).unwrap();
        let e = 0.3 * norm(&x).powf(1.5 - 4.0);
        assert!((v - e).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        let q = p(2, 1.5);
        let on = HalfspacePoint::new(vec![0.0], 0.0);
        assert!(poisson_kernel_h(&q, &on, &[0.0]).is_err());
        let x = HalfspacePoint::new(vec![0.0], 1.0);
        assert!(matches!(green_h(&q, &x, &x), Err(Error::Singular(_))));
        assert!(kelvin(Kelvin::KTildeAlpha, &q, KelvinScaling::HalfPower, |_| 1.0, &[0.0, -1.0]).is_err());
    }
}
