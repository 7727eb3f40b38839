//! Process parameters, derived constants and point types.

use crate::error::{Error, Result};
use crate::specfun::{gamma, ln_gamma, sin_pi};
use std::f64::consts::PI;

/// Constants appearing in the closed-form kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConstants {
    /// Riesz constant A_{d,alpha}.
    pub a_d_alpha: f64,
    /// A_{d,-alpha}, the normalizing constant of the fractional Laplacian.
    pub a_d_neg_alpha: f64,
    /// Ball Poisson kernel constant.
    pub c1: f64,
    /// Sphere hitting constant.
    pub c2: f64,
    /// Hyperplane hitting constant.
    pub c3: f64,
}

/// Riesz constant Gamma((d-g)/2) / (2^g pi^{d/2} |Gamma(g/2)|).
pub fn riesz_constant(d: usize, g: f64) -> Result<f64> {
    let d = d as f64;
    let l = ln_gamma(0.5 * (d - g))? - g * std::f64::consts::LN_2 - 0.5 * d * PI.ln() - ln_gamma(0.5 * g)?;
    Ok(l.exp())
}

impl KernelConstants {
    fn compute(d: usize, alpha: f64) -> Result<Self> {
        let df = d as f64;
        let a_d_alpha = riesz_constant(d, alpha)?;
        let a_d_neg_alpha = riesz_constant(d, -alpha)?;
        let c1 = gamma(0.5 * df)? * PI.powf(-1.0 - 0.5 * df) * sin_pi(0.5 * alpha);
        let (c2, c3) = if alpha > 1.0 {
            let g = (ln_gamma(0.5 * (alpha + df) - 1.0)? - ln_gamma(0.5 * (alpha - 1.0))?).exp();
            (PI.sqrt() * 2f64.powf(2.0 - alpha) * g, PI.powf(0.5 * (1.0 - df)) * g)
        } else {
            (f64::NAN, f64::NAN)
        };
        Ok(KernelConstants { a_d_alpha, a_d_neg_alpha, c1, c2, c3 })
    }
}

/// Dimension and stability index of the process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    d: usize,
    alpha: f64,
    consts: KernelConstants,
}

impl StableParams {
    /// Accepts d >= 2 and alpha in (0, 2). Kernels that need the process to
    /// hit sets of codimension one check `alpha > 1` themselves.
    pub fn new(d: usize, alpha: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("dimension d = {d} must be at least 2")));
        }
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::Domain(format!("alpha = {alpha} must lie in (0, 2)")));
        }
        let consts = KernelConstants::compute(d, alpha)?;
        Ok(StableParams { d, alpha, consts })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn constants(&self) -> &KernelConstants {
        &self.consts
    }

    /// Error unless alpha is in (1, 2), where spheres and hyperplanes are hit.
    /// Whether the process hits spheres and hyperplanes: alpha in (1, 2).
    pub fn has_hitting(&self) -> bool {
        self.alpha > 1.0 && self.alpha < 2.0
    }

    pub fn require_hitting(&self) -> Result<()> {
        if self.has_hitting() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "alpha = {} must lie in (1, 2) for sphere and hyperplane kernels",
                self.alpha
            )))
        }
    }

    pub(crate) fn check_dim(&self, v: &[f64], what: &str) -> Result<()> {
        if v.len() != self.d {
            return Err(Error::Domain(format!("{what} has length {}, expected d = {}", v.len(), self.d)));
        }
        if v.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain(format!("{what} has non-finite entries")));
        }
        Ok(())
    }
}

/// Constant of the relativistic hyperplane Poisson kernel for mass m.
pub fn c4(p: &StableParams, m: f64) -> Result<f64> {
    let d = p.d as f64;
    let a = p.alpha;
    if !(m > 0.0) {
        return Err(Error::Domain(format!("mass m = {m} must be positive")));
    }
    p.require_hitting()?;
    let l = (a - 1.0).ln() + 0.5 * (d + a - 2.0) * (m.powf(1.0 / a) / 2.0).ln()
        - 0.5 * (d - 1.0) * PI.ln()
        - ln_gamma(0.5 * (a + 1.0))?;
    Ok(l.exp())
}

/// A point of R^d.
#[derive(Debug, Clone, PartialEq)]
pub struct PointD(pub Vec<f64>);

impl PointD {
    pub fn new(coords: Vec<f64>) -> Self {
        PointD(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    /// In the complement of the unit sphere.
    pub fn in_d(&self) -> bool {
        self.norm() != 1.0
    }

    /// Off the hyperplane x_d = 0.
    pub fn in_h(&self) -> bool {
        self.0.last().is_some_and(|v| *v != 0.0)
    }
}

/// A point of R^d written as (x_bar, x_d).
#[derive(Debug, Clone, PartialEq)]
pub struct HalfspacePoint {
    pub bar: Vec<f64>,
    pub last: f64,
}

impl HalfspacePoint {
    pub fn new(bar: Vec<f64>, last: f64) -> Self {
        HalfspacePoint { bar, last }
    }

    pub fn in_h(&self) -> bool {
        self.last != 0.0
    }

    pub fn to_point(&self) -> PointD {
        let mut v = self.bar.clone();
        v.push(self.last);
        PointD(v)
    }

    pub fn from_point(x: &PointD) -> Self {
        let (last, bar) = x.0.split_last().expect("nonempty point");
        HalfspacePoint { bar: bar.to_vec(), last: *last }
    }
}

/// A point of R^d or the point at infinity, kept symbolic.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtPoint {
    Finite(PointD),
    Infinity,
}

/// A Martin boundary point: a finite boundary point or infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryPoint {
    Finite(Vec<f64>),
    Infinity,
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
