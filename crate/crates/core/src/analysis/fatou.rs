//! Nontangential approach to a boundary point.

use super::repr::{poisson_integral_d, poisson_integral_h, HarmonicRepresentation, IntegralOptions, MeasurePart, Space};
use crate::error::{Error, Result};
use crate::params::{norm, HalfspacePoint, StableParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// One probe point and its deviation from the expected boundary value.
#[derive(Debug, Clone, PartialEq)]
pub struct FatouSample {
    /// Boundary distance is 2^{-level}.
    pub level: usize,
    /// +1 outside the sphere / above the hyperplane, -1 on the other side.
    pub side: i8,
    pub point: Vec<f64>,
    pub deviation: f64,
}

/// Tangential spread of the probe points, as a fraction of the cone limit.
const CONE_FILL: f64 = 0.9;

fn tangent_direction(y: &[f64], rng: &mut ChaCha20Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..y.len()).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let dp: f64 = v.iter().zip(y).map(|(a, b)| a * b).sum();
        let t: Vec<f64> = v.iter().zip(y).map(|(a, b)| a - dp * b).collect();
        let n = norm(&t);
        if n > 1e-3 {
            return t.iter().map(|c| c / n).collect();
        }
    }
}

/// Expected nontangential limit: the boundary density at y, zero for atoms
/// (away from the atoms) and for the constant part.
fn boundary_value(rep: &HarmonicRepresentation, y: &[f64]) -> f64 {
    match &rep.measure {
        MeasurePart::Density(f) => f.eval(y),
        _ => 0.0,
    }
}

/// Evaluate u at points inside the cone {|x - y| < (1 + beta) dist(x, boundary)}
/// at boundary distance 2^{-k}, k = 1..depth, on both sides, with random
/// tangential offsets, and report |u(x) - f(y)|.
pub fn fatou_probe(
    p: &StableParams,
    rep: &HarmonicRepresentation,
    y: &[f64],
    beta: f64,
    depth: usize,
    seed: u64,
    opts: IntegralOptions,
) -> Result<Vec<FatouSample>> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("cone aperture {beta} must be positive")));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let target = boundary_value(rep, y);
    let mut out = Vec::with_capacity(2 * depth);
    for k in 1..=depth {
        let delta = 2f64.powi(-(k as i32));
        for side in [1i8, -1] {
            let frac = CONE_FILL * rng.gen::<f64>();
            let (point, u) = match rep.space {
                Space::Sphere => {
                    p.check_dim(y, "y")?;
                    let rho = 1.0 + side as f64 * delta;
                    let lim = (1.0 + beta) * delta;
                    // |rho(cos a y + sin a e) - y|^2 = rho^2 + 1 - 2 rho cos a
                    let cmin = ((rho * rho + 1.0 - lim * lim) / (2.0 * rho)).clamp(-1.0, 1.0);
                    let ang = frac * cmin.acos();
                    let e = tangent_direction(y, &mut rng);
                    let x: Vec<f64> = y.iter().zip(&e).map(|(a, b)| rho * (ang.cos() * a + ang.sin() * b)).collect();
                    let u = poisson_integral_d(p, rep, &x, opts)?;
                    (x, u)
                }
                Space::Halfspace => {
                    if y.len() + 1 != p.d() {
                        return Err(Error::Domain("boundary point must have length d - 1".into()));
                    }
                    let reach = delta * ((1.0 + beta).powi(2) - 1.0).sqrt() * frac;
                    let dir: Vec<f64> = if y.len() == 1 {
                        vec![if rng.gen::<bool>() { 1.0 } else { -1.0 }]
                    } else {
                        let th = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
                        vec![th.cos(), th.sin()]
                    };
                    let bar: Vec<f64> = y.iter().zip(&dir).map(|(a, b)| a + reach * b).collect();
                    let h = HalfspacePoint::new(bar, side as f64 * delta);
                    let u = poisson_integral_h(p, rep, &h, opts)?;
                    (h.to_point().0, u)
                }
            };
            out.push(FatouSample { level: k, side, point, deviation: (u - target).abs() });
        }
    }
    Ok(out)
}

/// sup of deviations over levels >= k, indexed by k = 1..depth.
pub fn running_max(samples: &[FatouSample]) -> Vec<f64> {
    let depth = samples.iter().map(|s| s.level).max().unwrap_or(0);
    let mut per = vec![0.0f64; depth];
    for s in samples {
        per[s.level - 1] = per[s.level - 1].max(s.deviation);
    }
    let mut out = vec![0.0; depth];
    let mut acc = 0.0f64;
    for k in (0..depth).rev() {
        acc = acc.max(per[k]);
        out[k] = acc;
    }
    out
}
