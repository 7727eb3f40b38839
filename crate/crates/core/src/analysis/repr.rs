//! Boundary data, Poisson/Martin integrals and the closed-form Hardy norms.

use super::grid::{quad_hyperplane_focused, quad_sphere_focused, Focus, QuadratureGrid};
use crate::error::{Error, Result};
use crate::halfspace::{martin_h, omega_alpha_density, poisson_kernel_h};
use crate::params::{dist, norm, BoundaryPoint, HalfspacePoint, StableParams};
use crate::sphere::{martin_d, one_minus_phi, phi, phi_at_origin, poisson_kernel_d};
use std::sync::Arc;

/// Which boundary the representation lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// The unit sphere, functions on its complement.
    Sphere,
    /// The hyperplane x_d = 0, functions on its complement.
    Halfspace,
}

/// Finite signed measure with finitely many atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    atoms: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        if atoms.len() != weights.len() {
            return Err(Error::Domain("atoms and weights differ in length".into()));
        }
        for i in 0..atoms.len() {
            for j in 0..i {
                if atoms[i] == atoms[j] {
                    return Err(Error::Domain("atoms must be distinct".into()));
                }
            }
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::Domain("weights must be finite".into()));
        }
        Ok(DiscreteMeasure { atoms, weights })
    }

    /// Unit point mass.
    pub fn dirac(at: Vec<f64>) -> Self {
        DiscreteMeasure { atoms: vec![at], weights: vec![1.0] }
    }

    pub fn atoms(&self) -> &[Vec<f64>] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Total variation: the sum of |w_i|.
    pub fn total_variation(&self) -> f64 {
        self.weights.iter().map(|w| w.abs()).sum()
    }

    /// The variation measure |mu|.
    pub fn abs(&self) -> Self {
        DiscreteMeasure { atoms: self.atoms.clone(), weights: self.weights.iter().map(|w| w.abs()).collect() }
    }
}

type Eval = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A function on the boundary, with hints for quadrature.
#[derive(Clone)]
pub struct BoundaryFunction {
    eval: Eval,
    /// Integrability class, metadata only; `f64::INFINITY` for bounded data.
    pub declared_p: f64,
    /// Where the function varies (hyperplane only); defaults to the origin.
    pub center: Option<Vec<f64>>,
    /// Length scale of its variation.
    pub scale: f64,
    /// |f(y)| = O(|y|^{-decay}) on the hyperplane; 0 for bounded data.
    pub decay: f64,
}

impl std::fmt::Debug for BoundaryFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundaryFunction")
            .field("declared_p", &self.declared_p)
            .field("center", &self.center)
            .field("scale", &self.scale)
            .field("decay", &self.decay)
            .finish()
    }
}

impl BoundaryFunction {
    pub fn new<F>(f: F, declared_p: f64) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        BoundaryFunction { eval: Arc::new(f), declared_p, center: None, scale: 1.0, decay: 0.0 }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c, f64::INFINITY)
    }

    pub fn with_center(mut self, center: Vec<f64>, scale: f64) -> Self {
        self.center = Some(center);
        self.scale = scale;
        self
    }

    pub fn with_decay(mut self, decay: f64) -> Self {
        self.decay = decay;
        self
    }

    pub fn eval(&self, y: &[f64]) -> f64 {
        (self.eval)(y)
    }

    /// |f|^q with the same hints.
    pub fn abs_pow(&self, q: f64) -> Self {
        let inner = self.eval.clone();
        BoundaryFunction {
            eval: Arc::new(move |y| inner(y).abs().powf(q)),
            declared_p: self.declared_p / q,
            center: self.center.clone(),
            scale: self.scale,
            decay: self.decay * q,
        }
    }
}

/// Which kernel integrates the measure part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Poisson,
    Martin,
}

/// The boundary datum of a representation.
#[derive(Debug, Clone)]
pub enum MeasurePart {
    Zero,
    Atomic(DiscreteMeasure),
    /// A density: with respect to sigma on the sphere; on the hyperplane with
    /// respect to Lebesgue measure (Poisson flavor) or to omega_alpha (Martin
    /// flavor), which give the same function P_H[f].
    Density(BoundaryFunction),
}

/// u = K[mu] + c h, with K the Poisson or Martin kernel and h = 1 - phi on the
/// sphere complement or |x_d|^{alpha-1} on the hyperplane complement.
#[derive(Debug, Clone)]
pub struct HarmonicRepresentation {
    pub space: Space,
    pub flavor: Flavor,
    pub measure: MeasurePart,
    pub c: f64,
}

impl HarmonicRepresentation {
    pub fn sphere(measure: MeasurePart, c: f64) -> Self {
        HarmonicRepresentation { space: Space::Sphere, flavor: Flavor::Poisson, measure, c }
    }

    pub fn halfspace(flavor: Flavor, measure: MeasurePart, c: f64) -> Self {
        HarmonicRepresentation { space: Space::Halfspace, flavor, measure, c }
    }
}

/// Resolution knobs for the function-part integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralOptions {
    /// Gauss-Legendre nodes per unit of log-distance in graded grids.
    pub per_unit: usize,
    /// Azimuths in graded sphere grids (d = 3).
    pub azimuths: usize,
}

impl Default for IntegralOptions {
    fn default() -> Self {
        IntegralOptions { per_unit: 24, azimuths: 48 }
    }
}

fn check_space(rep: &HarmonicRepresentation, s: Space) -> Result<()> {
    if rep.space != s {
        return Err(Error::Mismatch(format!("representation lives on {:?}, expected {:?}", rep.space, s)));
    }
    Ok(())
}

/// Grid on the sphere graded toward the radial projection of x at the scale
/// of its distance to the sphere.
pub fn sphere_grid_for(p: &StableParams, x: &[f64], opts: IntegralOptions) -> Result<QuadratureGrid> {
    let r = norm(x);
    let (center, scale) = if r == 0.0 {
        let mut e = vec![0.0; p.d()];
        e[0] = 1.0;
        (e, 1.0)
    } else {
        (x.iter().map(|c| c / r).collect(), (r - 1.0).abs().min(1.0))
    };
    quad_sphere_focused(p.d(), &[Focus::new(center, scale)], opts.per_unit, opts.azimuths)
}

/// P_D[f](x) with the value f(x/|x|) subtracted under the integral and restored
/// through phi, so the kernel peak near the sphere only meets a vanishing
/// integrand.
pub fn poisson_density_d(p: &StableParams, f: &BoundaryFunction, x: &[f64], opts: IntegralOptions) -> Result<f64> {
    let r = norm(x);
    let grid = sphere_grid_for(p, x, opts)?;
    let phix = phi(p, r)?;
    let fhat = if r == 0.0 { 0.0 } else { f.eval(&x.iter().map(|c| c / r).collect::<Vec<_>>()) };
    let k0 = phi_at_origin(p)?;
    let g = (r - 1.0) * (r + 1.0);
    let vals = grid.values(|y| {
        let dy = dist(x, y);
        (f.eval(y) - fhat) * k0 * crate::sphere::poisson_shape(p, g, dy)
    });
    Ok(fhat * phix + grid.integrate_values(&vals).value)
}

/// Evaluate a sphere-complement representation at x.
pub fn poisson_integral_d(p: &StableParams, rep: &HarmonicRepresentation, x: &[f64], opts: IntegralOptions) -> Result<f64> {
    check_space(rep, Space::Sphere)?;
    p.check_dim(x, "x")?;
    let r = norm(x);
    if r == 1.0 {
        return Err(Error::Domain("x lies on the unit sphere".into()));
    }
    let scale = match rep.flavor {
        Flavor::Poisson => 1.0,
        Flavor::Martin => 1.0 / phi_at_origin(p)?,
    };
    let mut u = 0.0;
    match &rep.measure {
        MeasurePart::Zero => {}
        MeasurePart::Atomic(m) => {
            for (a, w) in m.atoms.iter().zip(&m.weights) {
                u += w * match rep.flavor {
                    Flavor::Poisson => poisson_kernel_d(p, x, a)?,
                    Flavor::Martin => martin_d(p, x, &BoundaryPoint::Finite(a.clone()))?,
                };
            }
        }
        MeasurePart::Density(f) => u += scale * poisson_density_d(p, f, x, opts)?,
    }
    if rep.c != 0.0 {
        u += rep.c * one_minus_phi(p, r)?;
    }
    Ok(u)
}

/// Grid on the hyperplane graded toward the foot of x (scale |x_d|) and toward
/// the feature of the boundary function.
fn hyperplane_grid_for(p: &StableParams, f: &BoundaryFunction, x: &HalfspacePoint, opts: IntegralOptions) -> Result<QuadratureGrid> {
    let mut foci = vec![Focus::new(x.bar.clone(), x.last.abs())];
    let c = f.center.clone().unwrap_or_else(|| vec![0.0; p.d() - 1]);
    let gap: f64 = dist(&c, &x.bar);
    if gap > 1e-3 * f.scale.min(x.last.abs()) || (f.scale / x.last.abs()).ln().abs() > 2.0 {
        foci.push(Focus::new(c, f.scale));
    }
    let decay = p.d() as f64 + p.alpha() - 2.0 + f.decay;
    quad_hyperplane_focused(p.d(), &foci, opts.per_unit, decay.min(60.0))
}

/// P_H[f](x) by graded quadrature.
pub fn poisson_density_h(p: &StableParams, f: &BoundaryFunction, x: &HalfspacePoint, opts: IntegralOptions) -> Result<f64> {
    let grid = hyperplane_grid_for(p, f, x, opts)?;
    let c3 = p.constants().c3;
    let vals = grid.values(|y| {
        let r2: f64 = x.bar.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() + x.last * x.last;
        f.eval(y) * c3 * crate::halfspace::halfspace_shape(p.d(), p.alpha(), x.last, r2)
    });
    Ok(grid.integrate_values(&vals).value)
}

/// Evaluate a hyperplane-complement representation at x.
pub fn poisson_integral_h(p: &StableParams, rep: &HarmonicRepresentation, x: &HalfspacePoint, opts: IntegralOptions) -> Result<f64> {
    check_space(rep, Space::Halfspace)?;
    if x.bar.len() + 1 != p.d() || x.last == 0.0 {
        return Err(Error::Domain("x must be a point of R^d off the hyperplane".into()));
    }
    let mut u = 0.0;
    match &rep.measure {
        MeasurePart::Zero => {}
        MeasurePart::Atomic(m) => {
            for (a, w) in m.atoms.iter().zip(&m.weights) {
                u += w * match rep.flavor {
                    Flavor::Poisson => poisson_kernel_h(p, x, a)?,
                    Flavor::Martin => martin_h(p, x, &BoundaryPoint::Finite(a.clone()))?,
                };
            }
        }
        MeasurePart::Density(f) => u += poisson_density_h(p, f, x, opts)?,
    }
    if rep.c != 0.0 {
        u += rep.c * x.last.abs().powf(p.alpha() - 1.0);
    }
    Ok(u)
}

/// Outcome of checking whether a boundary function is integrable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integrability {
    Converges(f64),
    Diverges,
}

/// Test whether int |f|^q d(omega_alpha) is finite: the mass in far shells
/// (radii 1e4, 1e8, 1e12) and in small balls around `singular_points`
/// (radii 1e-4, 1e-8, 1e-12) must shrink geometrically.
pub fn omega_integrability(p: &StableParams, f: &BoundaryFunction, q: f64, singular_points: &[Vec<f64>]) -> Result<Integrability> {
    p.require_hitting()?;
    let n = p.d() - 1;
    let g = |y: &[f64]| f.eval(y).abs().powf(q) * omega_alpha_density(p, y).unwrap_or(0.0);
    let ring = |r0: f64, r1: f64, c: &[f64]| -> f64 {
        // integral of g over r0 < |y - c| < r1 in log-radius
        let h = |l: f64| {
            let r = l.exp();
            if n == 1 {
                let a = g(&[c[0] + r]);
                let b = g(&[c[0] - r]);
                (a + b) * r
            } else {
                let m = 64;
                let mut s = 0.0;
                for k in 0..m {
                    let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / m as f64;
                    s += g(&[c[0] + r * th.cos(), c[1] + r * th.sin()]);
                }
                s * 2.0 * std::f64::consts::PI / m as f64 * r * r
            }
        };
        crate::quad::integrate(h, r0.ln(), r1.ln(), 0.0, 1e-8, 400).value
    };
    let origin = vec![0.0; n];
    let far = [ring(1e4, 1e8, &origin), ring(1e8, 1e12, &origin)];
    if !far[0].is_finite() || !far[1].is_finite() || (far[1] >= 0.5 * far[0] && far[0] > 0.0) {
        return Ok(Integrability::Diverges);
    }
    for c in singular_points {
        let near = [ring(1e-8, 1e-4, c), ring(1e-12, 1e-8, c)];
        if !near[0].is_finite() || !near[1].is_finite() || (near[1] >= 0.5 * near[0] && near[0] > 0.0) {
            return Ok(Integrability::Diverges);
        }
    }
    let foci: Vec<Focus> = std::iter::once(Focus::new(origin, 1.0))
        .chain(singular_points.iter().map(|c| Focus::new(c.clone(), 1e-3)))
        .collect();
    let decay = (n as f64 + p.alpha() + q * f.decay).min(60.0);
    let grid = quad_hyperplane_focused(p.d(), &foci, 16, decay)?;
    Ok(Integrability::Converges(grid.integrate(g).value))
}

/// Norm of f in L^q(sigma) on the sphere, from a uniform grid.
pub fn sphere_lp_norm(p: &StableParams, f: &BoundaryFunction, q: f64, resolution: usize) -> Result<f64> {
    let grid = super::grid::quad_sphere(p, resolution)?;
    let vals = grid.values(|y| f.eval(y));
    if q.is_infinite() {
        return Ok(vals.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    }
    let pw: Vec<f64> = vals.iter().map(|v| v.abs().powf(q)).collect();
    Ok(grid.integrate_values(&pw).value.powf(1.0 / q))
}

fn omega_lp_norm(p: &StableParams, f: &BoundaryFunction, q: f64) -> Result<f64> {
    match omega_integrability(p, f, q, &[])? {
        Integrability::Converges(v) => Ok(v.powf(1.0 / q)),
        Integrability::Diverges => Ok(f64::INFINITY),
    }
}

/// Closed-form probabilistic Hardy norm of a representation.
pub fn prob_hardy_norm(p: &StableParams, rep: &HarmonicRepresentation, q: f64) -> Result<f64> {
    if !(q >= 1.0) {
        return Err(Error::Domain(format!("exponent {q} must be at least 1")));
    }
    match rep.space {
        Space::Sphere => {
            let phi0 = phi_at_origin(p)?;
            let mass_scale = match rep.flavor {
                Flavor::Poisson => 1.0,
                Flavor::Martin => 1.0 / phi0,
            };
            if q == 1.0 {
                let mu = match &rep.measure {
                    MeasurePart::Zero => 0.0,
                    MeasurePart::Atomic(m) => m.total_variation(),
                    MeasurePart::Density(f) => sphere_lp_norm(p, f, 1.0, 1024)?,
                };
                return Ok(phi0 * mass_scale * mu + rep.c.abs() * (1.0 - phi0));
            }
            let fp = match &rep.measure {
                MeasurePart::Zero => 0.0,
                MeasurePart::Atomic(_) => {
                    return Err(Error::Mismatch("exponent above 1 needs a density, not atoms".into()))
                }
                MeasurePart::Density(f) => (mass_scale * sphere_lp_norm(p, f, q, 1024)?).powf(q),
            };
            if q.is_infinite() {
                return Err(Error::Unsupported("probabilistic norm with infinite exponent".into()));
            }
            Ok((phi0 * fp + rep.c.abs().powf(q) * (1.0 - phi0)).powf(1.0 / q))
        }
        Space::Halfspace => {
            if q == 1.0 {
                let mu = match &rep.measure {
                    MeasurePart::Zero => 0.0,
                    MeasurePart::Atomic(m) => match rep.flavor {
                        Flavor::Martin => m.total_variation(),
                        Flavor::Poisson => m
                            .atoms
                            .iter()
                            .zip(&m.weights)
                            .map(|(a, w)| Ok(w.abs() * omega_alpha_density(p, a)?))
                            .sum::<Result<f64>>()?,
                    },
                    MeasurePart::Density(f) => omega_lp_norm(p, f, 1.0)?,
                };
                return Ok(mu + rep.c.abs());
            }
            if rep.c != 0.0 {
                return Ok(f64::INFINITY);
            }
            match &rep.measure {
                MeasurePart::Zero => Ok(0.0),
                MeasurePart::Atomic(_) => Err(Error::Mismatch("exponent above 1 needs a density, not atoms".into())),
                MeasurePart::Density(f) => omega_lp_norm(p, f, q),
            }
        }
    }
}

/// Least alpha-harmonic majorant of |u|^q, from the representation.
pub fn majorant_f(p: &StableParams, rep: &HarmonicRepresentation, q: f64, x: &[f64], opts: IntegralOptions) -> Result<f64> {
    if !(q >= 1.0) || q.is_infinite() {
        return Err(Error::Domain(format!("exponent {q} must be finite and at least 1")));
    }
    let measure = match &rep.measure {
        MeasurePart::Zero => MeasurePart::Zero,
        MeasurePart::Atomic(m) => {
            if q > 1.0 {
                return Err(Error::Mismatch("exponent above 1 needs a density, not atoms".into()));
            }
            MeasurePart::Atomic(m.abs())
        }
        MeasurePart::Density(f) => MeasurePart::Density(f.abs_pow(q)),
    };
    let abs_rep = HarmonicRepresentation { space: rep.space, flavor: rep.flavor, measure, c: rep.c.abs().powf(q) };
    match rep.space {
        Space::Sphere => poisson_integral_d(p, &abs_rep, x, opts),
        Space::Halfspace => {
            if q > 1.0 && rep.c != 0.0 {
                return Ok(f64::INFINITY);
            }
            let h = HalfspacePoint::new(x[..x.len() - 1].to_vec(), x[x.len() - 1]);
            poisson_integral_h(p, &abs_rep, &h, opts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_density_gives_phi() {
        for d in [2, 3] {
            let p = StableParams::new(d, 1.5).unwrap();
            let rep = HarmonicRepresentation::sphere(MeasurePart::Density(BoundaryFunction::constant(1.0)), 0.0);
            for &r in &[0.0, 0.3, 0.999, 1.001, 4.0] {
                let mut x = vec![0.0; d];
                x[0] = r * 0.6;
                x[1] = r * 0.8;
                let u = poisson_integral_d(&p, &rep, &x, IntegralOptions::default()).unwrap();
                let e = phi(&p, r).unwrap();
                assert!((u - e).abs() < 1e-12, "d={d} r={r}: {u} {e}");
            }
        }
    }

    #[test]
    fn martin_atom_at_reference_point() {
        let p = StableParams::new(2, 1.5).unwrap();
        let rep = HarmonicRepresentation::halfspace(Flavor::Martin, MeasurePart::Atomic(DiscreteMeasure::dirac(vec![0.0])), 0.0);
        let u = poisson_integral_h(&p, &rep, &HalfspacePoint::new(vec![0.0], 1.0), IntegralOptions::default()).unwrap();
        assert!((u - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constant_function_on_hyperplane() {
        for d in [2, 3] {
            let p = StableParams::new(d, 1.3).unwrap();
            let rep = HarmonicRepresentation::halfspace(Flavor::Poisson, MeasurePart::Density(BoundaryFunction::constant(1.0)), 0.0);
            let x = HalfspacePoint::new(vec![0.5; d - 1], -0.01);
            let u = poisson_integral_h(&p, &rep, &x, IntegralOptions::default()).unwrap();
            assert!((u - 1.0).abs() < 1e-8, "d={d} u={u}");
        }
    }

    #[test]
    fn closed_form_norms() {
        let p = StableParams::new(2, 1.5).unwrap();
        let phi0 = phi_at_origin(&p).unwrap();
        let m = DiscreteMeasure::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![1.5, -0.5]).unwrap();
        let rep = HarmonicRepresentation::sphere(MeasurePart::Atomic(m.clone()), 0.0);
        assert!((prob_hardy_norm(&p, &rep, 1.0).unwrap() - 2.0 * phi0).abs() < 1e-15);
        assert!(matches!(prob_hardy_norm(&p, &rep, 2.0), Err(Error::Mismatch(_))));
        let rep = HarmonicRepresentation::halfspace(Flavor::Martin, MeasurePart::Atomic(DiscreteMeasure::dirac(vec![0.0])), 3.0);
        assert_eq!(prob_hardy_norm(&p, &rep, 1.0).unwrap(), 4.0);
    }
}
