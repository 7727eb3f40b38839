use rand::Rng;
use rand_distr::{Beta, Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::params::{HalfspacePoint, StableParams};

/// Gamma(shape, 1) draw. Shapes below one use the boosted Marsaglia-Tsang
/// construction of `rand_distr`.
pub fn sample_gamma<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> Result<f64> {
    let g = Gamma::new(shape, 1.0).map_err(|e| Error::Domain(format!("gamma shape {shape}: {e}")))?;
    Ok(g.sample(rng))
}

/// Uniform direction on S^{d-1}.
pub fn unit_direction<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if n > 1e-300 {
            return v.into_iter().map(|a| a / n).collect();
        }
    }
}

/// Exit position of the unit ball for the process started at the center:
/// uniform direction, radius R with 1/R^2 ~ Beta(alpha/2, 1 - alpha/2).
pub fn sample_ball_exit_center<R: Rng + ?Sized>(p: &StableParams, rng: &mut R) -> Vec<f64> {
    let a = p.alpha();
    let beta = Beta::new(0.5 * a, 1.0 - 0.5 * a).expect("valid beta parameters");
    let dir = unit_direction(p.d(), rng);
    let w: f64 = loop {
        let w = beta.sample(rng);
        if w > 0.0 {
            break w;
        }
    };
    let r = w.powf(-0.5).max(1.0);
    dir.into_iter().map(|u| u * r).collect()
}

/// Exit position of B(center, radius) started at the center.
pub fn sample_ball_exit<R: Rng + ?Sized>(p: &StableParams, center: &[f64], radius: f64, rng: &mut R) -> Vec<f64> {
    sample_ball_exit_center(p, rng).into_iter().zip(center).map(|(u, c)| c + radius * u).collect()
}

/// Hitting position on the hyperplane together with the subordinating time
/// T0 = x_d^2 / (2G), G ~ Gamma((alpha - 1)/2).
pub fn sample_halfplane_hit_with_time<R: Rng + ?Sized>(p: &StableParams, x: &HalfspacePoint, rng: &mut R) -> Result<(Vec<f64>, f64)> {
    p.require_hitting()?;
    if x.bar.len() + 1 != p.d() {
        return Err(Error::Domain("dimension mismatch".into()));
    }
    if x.last == 0.0 {
        return Err(Error::Domain("start point lies on the hyperplane".into()));
    }
    let g = sample_gamma(0.5 * (p.alpha() - 1.0), rng)?;
    let t0 = x.last * x.last / (2.0 * g);
    let s = t0.sqrt();
    let y = x.bar.iter().map(|&b| b + s * rng.sample::<f64, _>(StandardNormal)).collect();
    Ok((y, t0))
}

/// Hitting position on the hyperplane (the first d - 1 coordinates; the last
/// one is zero).
pub fn sample_halfplane_hit<R: Rng + ?Sized>(p: &StableParams, x: &HalfspacePoint, rng: &mut R) -> Result<Vec<f64>> {
    Ok(sample_halfplane_hit_with_time(p, x, rng)?.0)
}
