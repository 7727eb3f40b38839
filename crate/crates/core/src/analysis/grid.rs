//! Discrete surrogates for the normalized surface measure on the unit sphere
//! and for Lebesgue measure on the hyperplane.

use crate::error::{Error, Result};
use crate::params::{norm, StableParams};
use crate::quad::{gauss_legendre, graded_radial, ordered_map, pairwise_sum};
use std::f64::consts::PI;

/// How a grid was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    SphereTrapezoid,
    SphereProductGl,
    /// Geometrically graded grid around one or more foci on the sphere.
    SphereFocused,
    HyperplaneTanMap,
}

#[derive(Debug, Clone, PartialEq)]
struct Tail {
    center: Vec<f64>,
    r_max: f64,
    decay: f64,
}

/// Nodes and weights; node coordinates are stored flat with stride `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub kind: GridKind,
    dim: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    tail: Option<Tail>,
}

/// Value of a grid integral with the analytic bound on the truncated tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridIntegral {
    pub value: f64,
    pub tail_bound: f64,
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Length of each node vector.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Truncation radius of a hyperplane grid.
    pub fn r_max(&self) -> Option<f64> {
        self.tail.as_ref().map(|t| t.r_max)
    }

    /// Values of `f` at every node, in node order.
    pub fn values<F>(&self, f: F) -> Vec<f64>
    where
        F: Fn(&[f64]) -> f64 + Sync + Send,
    {
        ordered_map(self.len(), |i| f(self.node(i)))
    }

    /// Weighted sum of `f` over the nodes; for hyperplane grids the tail beyond
    /// the truncation radius is bounded from the declared decay and the size
    /// of `f` on the outermost nodes.
    pub fn integrate<F>(&self, f: F) -> GridIntegral
    where
        F: Fn(&[f64]) -> f64 + Sync + Send,
    {
        let vals = self.values(f);
        self.integrate_values(&vals)
    }

    pub fn integrate_values(&self, vals: &[f64]) -> GridIntegral {
        let terms: Vec<f64> = vals.iter().zip(&self.weights).map(|(v, w)| v * w).collect();
        let value = pairwise_sum(&terms);
        let tail_bound = match &self.tail {
            None => 0.0,
            Some(t) => {
                // K = sup |f| r^p over the outer decade of nodes
                let mut k = 0.0f64;
                for (i, v) in vals.iter().enumerate() {
                    let r = crate::params::dist(self.node(i), &t.center);
                    if r > 0.1 * t.r_max {
                        k = k.max(v.abs() * r.powf(t.decay));
                    }
                }
                let dm1 = self.dim as f64;
                let area = sphere_area(self.dim);
                area * k * t.r_max.powf(dm1 - t.decay) / (t.decay - dm1)
            }
        };
        GridIntegral { value, tail_bound }
    }

    /// Partial sums of |weighted values| over balls around the tail center,
    /// for the given radii.
    pub fn shell_masses(&self, vals: &[f64], radii: &[f64]) -> Vec<f64> {
        let center = match &self.tail {
            Some(t) => t.center.clone(),
            None => vec![0.0; self.dim],
        };
        radii
            .iter()
            .map(|&r| {
                let terms: Vec<f64> = (0..self.len())
                    .map(|i| {
                        if crate::params::dist(self.node(i), &center) <= r {
                            (vals[i] * self.weights[i]).abs()
                        } else {
                            0.0
                        }
                    })
                    .collect();
                pairwise_sum(&terms)
            })
            .collect()
    }
}

/// Surface area of the unit sphere S^{n-1} in R^n.
pub fn sphere_area(n: usize) -> f64 {
    let n = n as f64;
    2.0 * PI.powf(0.5 * n) / crate::specfun::gamma(0.5 * n).expect("positive argument")
}

fn check_sphere_dim(d: usize) -> Result<()> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("sphere quadrature is implemented for d = 2, 3, got {d}")))
    }
}

/// Uniform grid on the unit sphere. d = 2: `resolution` equispaced points;
/// d = 3: `resolution` Gauss-Legendre nodes in cos(theta) times 2*resolution
/// azimuths. Weights sum to one.
pub fn quad_sphere(p: &StableParams, resolution: usize) -> Result<QuadratureGrid> {
    sphere_grid(p.d(), resolution)
}

pub(crate) fn sphere_grid(d: usize, resolution: usize) -> Result<QuadratureGrid> {
    check_sphere_dim(d)?;
    if resolution < 8 {
        return Err(Error::Domain(format!("resolution {resolution} must be at least 8")));
    }
    if d == 2 {
        let n = resolution;
        let mut nodes = Vec::with_capacity(2 * n);
        for j in 0..n {
            let t = 2.0 * PI * j as f64 / n as f64;
            nodes.push(t.cos());
            nodes.push(t.sin());
        }
        return Ok(QuadratureGrid {
            kind: GridKind::SphereTrapezoid,
            dim: 2,
            nodes,
            weights: vec![1.0 / n as f64; n],
            tail: None,
        });
    }
    let (x, w) = gauss_legendre(resolution);
    let na = 2 * resolution;
    let mut nodes = Vec::with_capacity(3 * resolution * na);
    let mut weights = Vec::with_capacity(resolution * na);
    for (c, wc) in x.iter().zip(&w) {
        let s = (1.0 - c * c).sqrt();
        for k in 0..na {
            let ph = 2.0 * PI * k as f64 / na as f64;
            nodes.extend_from_slice(&[s * ph.cos(), s * ph.sin(), *c]);
            weights.push(0.5 * wc / na as f64);
        }
    }
    Ok(QuadratureGrid { kind: GridKind::SphereProductGl, dim: 3, nodes, weights, tail: None })
}

/// A point around which a grid is refined, and the length scale of the
/// feature there.
#[derive(Debug, Clone, PartialEq)]
pub struct Focus {
    pub center: Vec<f64>,
    pub scale: f64,
}

impl Focus {
    pub fn new(center: Vec<f64>, scale: f64) -> Self {
        Focus { center, scale }
    }
}

fn unit(v: &[f64]) -> Vec<f64> {
    let n = norm(v);
    v.iter().map(|c| c / n).collect()
}

/// Orthonormal pair completing `a` to a basis of R^3.
fn frame(a: &[f64]) -> ([f64; 3], [f64; 3]) {
    let helper = if a[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let dt = helper[0] * a[0] + helper[1] * a[1] + helper[2] * a[2];
    let mut e1 = [helper[0] - dt * a[0], helper[1] - dt * a[1], helper[2] - dt * a[2]];
    let n = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    for c in e1.iter_mut() {
        *c /= n;
    }
    let e2 = [a[1] * e1[2] - a[2] * e1[1], a[2] * e1[0] - a[0] * e1[2], a[0] * e1[1] - a[1] * e1[0]];
    (e1, e2)
}

const PARTITION_POWER: i32 = 4;

fn partition_weight(y: &[f64], foci: &[Focus], i: usize) -> f64 {
    if foci.len() == 1 {
        return 1.0;
    }
    let q = |f: &Focus| y.iter().zip(&f.center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() + f.scale * f.scale;
    let qi = q(&foci[i]);
    let den: f64 = foci.iter().map(|f| (qi / q(f)).powi(PARTITION_POWER)).sum();
    1.0 / den
}

/// Sphere grid graded toward each focus: the geodesic distance from a focus
/// is theta = s sinh(v) with composite Gauss-Legendre in v, so scales from s
/// up to pi are resolved with a fixed number of nodes per decade. Several foci
/// are blended with a smooth partition of unity folded into the weights.
pub fn quad_sphere_focused(d: usize, foci: &[Focus], per_unit: usize, azimuths: usize) -> Result<QuadratureGrid> {
    check_sphere_dim(d)?;
    if foci.is_empty() {
        return Err(Error::Domain("focused grid needs at least one focus".into()));
    }
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (fi, f) in foci.iter().enumerate() {
        if f.center.len() != d {
            return Err(Error::Domain("focus dimension mismatch".into()));
        }
        let a = unit(&f.center);
        let s = f.scale.clamp(1e-300, PI);
        let radial = graded_radial(s, PI, per_unit);
        if d == 2 {
            let base = a[1].atan2(a[0]);
            for &(th, w) in &radial {
                for sgn in [1.0, -1.0] {
                    let ang = base + sgn * th;
                    let y = [ang.cos(), ang.sin()];
                    let chi = partition_weight(&y, foci, fi);
                    nodes.extend_from_slice(&y);
                    weights.push(w * chi / (2.0 * PI));
                }
            }
        } else {
            let (e1, e2) = frame(&a);
            let na = azimuths.max(8);
            for &(th, w) in &radial {
                let (st, ct) = th.sin_cos();
                for k in 0..na {
                    let ph = 2.0 * PI * (k as f64 + 0.5) / na as f64;
                    let (sp, cp) = ph.sin_cos();
                    let y = [
                        ct * a[0] + st * (cp * e1[0] + sp * e2[0]),
                        ct * a[1] + st * (cp * e1[1] + sp * e2[1]),
                        ct * a[2] + st * (cp * e1[2] + sp * e2[2]),
                    ];
                    let chi = partition_weight(&y, foci, fi);
                    nodes.extend_from_slice(&y);
                    weights.push(w * st * chi / (2.0 * na as f64));
                }
            }
        }
    }
    Ok(QuadratureGrid { kind: GridKind::SphereFocused, dim: d, nodes, weights, tail: None })
}

/// Hyperplane grid around the origin with unit scale; `resolution` is the number
/// of Gauss-Legendre nodes per unit of log-radius. The integrand is declared
/// to decay like |y|^{-decay_exponent}.
pub fn quad_hyperplane(p: &StableParams, resolution: usize, decay_exponent: f64) -> Result<QuadratureGrid> {
    if resolution < 8 {
        return Err(Error::Domain(format!("resolution {resolution} must be at least 8")));
    }
    let f = Focus::new(vec![0.0; p.d() - 1], 1.0);
    quad_hyperplane_focused(p.d(), &[f], resolution, decay_exponent)
}

/// Truncation radius (relative to the scale) at which a |y|^{-p} tail in
/// dimension n falls below 1e-15 of a unit-size bulk.
fn truncation_radius(n: f64, decay: f64) -> f64 {
    let e = decay - n;
    (1e-15 * e).powf(-1.0 / e).clamp(1e3, 1e250)
}

/// Hyperplane grid graded around each focus (radius s sinh(v)), blended by a
/// partition of unity. d = 2 uses symmetric pairs about each focus; d = 3 uses
/// polar rings with 4*per_unit azimuths.
pub fn quad_hyperplane_focused(d: usize, foci: &[Focus], per_unit: usize, decay_exponent: f64) -> Result<QuadratureGrid> {
    let n = (d - 1) as f64;
    if !(decay_exponent > n) {
        return Err(Error::Domain(format!(
            "decay exponent {decay_exponent} must exceed d - 1 = {n} for integrability"
        )));
    }
    if d != 2 && d != 3 {
        return Err(Error::Unsupported(format!("hyperplane quadrature is implemented for d = 2, 3, got {d}")));
    }
    if foci.is_empty() {
        return Err(Error::Domain("focused grid needs at least one focus".into()));
    }
    let span = foci
        .iter()
        .map(|f| norm(&f.center) + f.scale)
        .fold(0.0f64, f64::max)
        .max(1.0);
    let r_max = span * truncation_radius(n, decay_exponent);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (fi, f) in foci.iter().enumerate() {
        if f.center.len() != d - 1 {
            return Err(Error::Domain("focus dimension mismatch".into()));
        }
        let s = f.scale.max(1e-300);
        let radial = graded_radial(s, r_max, per_unit);
        if d == 2 {
            for &(r, w) in &radial {
                for sgn in [1.0, -1.0] {
                    let y = [f.center[0] + sgn * r];
                    let chi = partition_weight(&y, foci, fi);
                    nodes.push(y[0]);
                    weights.push(w * chi);
                }
            }
        } else {
            let na = 4 * per_unit;
            for &(r, w) in &radial {
                for k in 0..na {
                    let ph = 2.0 * PI * (k as f64 + 0.5) / na as f64;
                    let y = [f.center[0] + r * ph.cos(), f.center[1] + r * ph.sin()];
                    let chi = partition_weight(&y, foci, fi);
                    nodes.extend_from_slice(&y);
                    weights.push(w * r * chi * 2.0 * PI / na as f64);
                }
            }
        }
    }
    let tail = Tail { center: foci[0].center.clone(), r_max, decay: decay_exponent };
    Ok(QuadratureGrid { kind: GridKind::HyperplaneTanMap, dim: d - 1, nodes, weights, tail: Some(tail) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_weights_sum_to_one() {
        for d in [2, 3] {
            let g = sphere_grid(d, 16).unwrap();
            let s: f64 = g.weights().iter().sum();
            assert!((s - 1.0).abs() < 1e-14);
            let m = g.integrate(|y| y[0]).value;
            assert!(m.abs() < 1e-14);
        }
        assert!(matches!(sphere_grid(4, 16), Err(Error::Unsupported(_))));
    }

    #[test]
    fn focused_sphere_grid_integrates_moments() {
        for d in [2, 3] {
            let mut c = vec![0.0; d];
            c[0] = 0.6;
            c[1] = 0.8;
            let mut c2 = vec![0.0; d];
            c2[d - 1] = -1.0;
            let foci = [Focus::new(c, 1e-5), Focus::new(c2, 1e-3)];
            let g = quad_sphere_focused(d, &foci, 24, 32).unwrap();
            let s: f64 = g.weights().iter().sum();
            assert!((s - 1.0).abs() < 1e-10, "d={d} s={s}");
            // E[y_1^2] = 1/d on the sphere
            let m = g.integrate(|y| y[0] * y[0]).value;
            assert!((m - 1.0 / d as f64).abs() < 1e-10, "d={d} m={m}");
        }
    }

    #[test]
    fn hyperplane_cauchy_mass() {
        // int 1/(pi (1+y^2)) dy = 1
        let foci = [Focus::new(vec![0.0], 1.0)];
        let g = quad_hyperplane_focused(2, &foci, 12, 2.0).unwrap();
        let r = g.integrate(|y| 1.0 / (PI * (1.0 + y[0] * y[0])));
        assert!((r.value - 1.0).abs() < 1e-12, "{:?}", r);
        assert!(r.tail_bound < 1e-12);
        assert!(quad_hyperplane_focused(2, &foci, 12, 1.0).is_err());
    }
}
