//! Schedule suprema of slice norms.

use super::grid::{quad_hyperplane_focused, quad_sphere_focused, sphere_grid, Focus, QuadratureGrid};
use super::repr::Space;
use crate::error::{Error, Result};
use crate::params::StableParams;

/// Schedule and resolution for [`hardy_norm`].
#[derive(Debug, Clone, PartialEq)]
pub struct HardyOptions {
    /// Slices at 1 +- 2^{-k}, 2^k (sphere) or +-2^{-k}, +-2^k (hyperplane), k = 1..levels.
    pub levels: usize,
    /// Uniform sphere grid resolution when no foci are given.
    pub resolution: usize,
    /// Boundary points where u concentrates; slice grids are graded toward them.
    pub foci: Vec<Vec<f64>>,
    /// Nodes per unit log-distance in graded grids.
    pub per_unit: usize,
    /// Hyperplane only: |u_t(y)|^p = O(|y|^{-slice_decay}); `None` means
    /// p (d + alpha - 2), the decay of a Poisson integral of a finite measure.
    pub slice_decay: Option<f64>,
}

impl Default for HardyOptions {
    fn default() -> Self {
        HardyOptions { levels: 24, resolution: 512, foci: Vec::new(), per_unit: 24, slice_decay: None }
    }
}

/// One slice of the schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceNorm {
    /// r for the sphere, t for the hyperplane.
    pub param: f64,
    pub norm: f64,
    /// The slice integral itself failed to converge.
    pub diverged: bool,
}

/// Schedule supremum with divergence diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyEstimate {
    /// Supremum over the schedule (infinite if a slice diverged).
    pub value: f64,
    pub slices: Vec<SliceNorm>,
    /// Some approach sequence is still increasing, without decaying
    /// increments, at the end of the schedule.
    pub increasing_at_end: bool,
    /// Divergence indicator: a slice diverged or the supremum keeps growing.
    pub diverging: bool,
}

fn lp_from_values(grid: &QuadratureGrid, vals: &[f64], q: f64) -> (f64, bool) {
    if vals.iter().any(|v| !v.is_finite()) {
        return (f64::INFINITY, true);
    }
    if q.is_infinite() {
        return (vals.iter().fold(0.0f64, |m, v| m.max(v.abs())), false);
    }
    let pw: Vec<f64> = vals.iter().map(|v| v.abs().powf(q)).collect();
    (grid.integrate_values(&pw).value.max(0.0).powf(1.0 / q), false)
}

fn sphere_slice<F>(p: &StableParams, u: &F, q: f64, r: f64, opts: &HardyOptions) -> Result<SliceNorm>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    let grid = if opts.foci.is_empty() {
        sphere_grid(p.d(), opts.resolution)?
    } else {
        let s = (r - 1.0).abs().min(1.0);
        let foci: Vec<Focus> = opts.foci.iter().map(|c| Focus::new(c.clone(), s)).collect();
        quad_sphere_focused(p.d(), &foci, opts.per_unit, 4 * opts.per_unit)?
    };
    let vals = grid.values(|y| {
        let x: Vec<f64> = y.iter().map(|c| r * c).collect();
        u(&x)
    });
    let (norm, diverged) = lp_from_values(&grid, &vals, q);
    Ok(SliceNorm { param: r, norm, diverged })
}

fn halfspace_slice<F>(p: &StableParams, u: &F, q: f64, t: f64, opts: &HardyOptions) -> Result<SliceNorm>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    let n = (p.d() - 1) as f64;
    let declared = opts.slice_decay.unwrap_or(q * (p.d() as f64 + p.alpha() - 2.0));
    let centers = if opts.foci.is_empty() { vec![vec![0.0; p.d() - 1]] } else { opts.foci.clone() };
    let foci: Vec<Focus> = centers.iter().map(|c| Focus::new(c.clone(), t.abs())).collect();
    // the grid must reach 1e12 for the shell test, whatever the declared decay
    let grid_decay = if declared > n { declared.min(n + 1.2) } else { n + 1.2 };
    let grid = quad_hyperplane_focused(p.d(), &foci, opts.per_unit, grid_decay)?;
    let vals = grid.values(|y| {
        let mut x = y.to_vec();
        x.push(t);
        u(&x)
    });
    if q.is_infinite() {
        let (norm, diverged) = lp_from_values(&grid, &vals, q);
        return Ok(SliceNorm { param: t, norm, diverged });
    }
    let pw: Vec<f64> = vals.iter().map(|v| v.abs().powf(q)).collect();
    if pw.iter().any(|v| !v.is_finite()) {
        return Ok(SliceNorm { param: t, norm: f64::INFINITY, diverged: true });
    }
    let span = t.abs().max(1.0);
    let shells = grid.shell_masses(&pw, &[1e4 * span, 1e8 * span, 1e12 * span]);
    let (d1, d2) = (shells[1] - shells[0], shells[2] - shells[1]);
    if declared <= n || (d1 > 1e-12 * shells[2] && d2 >= 0.5 * d1) {
        return Ok(SliceNorm { param: t, norm: f64::INFINITY, diverged: true });
    }
    let total = grid.integrate_values(&pw);
    Ok(SliceNorm { param: t, norm: (total.value + total.tail_bound).max(0.0).powf(1.0 / q), diverged: false })
}

fn still_increasing(seq: &[f64]) -> bool {
    let k = seq.len();
    if k < 3 {
        return false;
    }
    let d2 = seq[k - 1] - seq[k - 2];
    let d1 = seq[k - 2] - seq[k - 3];
    d2 > 1e-6 * seq[k - 1].abs() && d2 >= (1.0 - 1e-3) * d1
}

/// Supremum of slice L^q norms of u over a geometric schedule accumulating at
/// the boundary and at infinity. `u` returns NaN where it cannot be evaluated.
pub fn hardy_norm<F>(space: Space, p: &StableParams, u: F, q: f64, opts: &HardyOptions) -> Result<HardyEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    if !(q >= 1.0) {
        return Err(Error::Domain(format!("exponent {q} must be at least 1")));
    }
    let ks: Vec<f64> = (1..=opts.levels).map(|k| 2f64.powi(-(k as i32))).collect();
    let sequences: Vec<Vec<f64>> = match space {
        Space::Sphere => vec![
            ks.iter().map(|h| 1.0 - h).collect(),
            ks.iter().map(|h| 1.0 + h).collect(),
            ks.iter().map(|h| 1.0 / h).collect(),
        ],
        Space::Halfspace => vec![
            ks.clone(),
            ks.iter().map(|h| -h).collect(),
            ks.iter().map(|h| 1.0 / h).collect(),
            ks.iter().map(|h| -1.0 / h).collect(),
        ],
    };
    let mut slices = Vec::new();
    let mut increasing_at_end = false;
    for seq in &sequences {
        let mut norms = Vec::new();
        for &s in seq {
            let sl = match space {
                Space::Sphere => sphere_slice(p, &u, q, s, opts)?,
                Space::Halfspace => halfspace_slice(p, &u, q, s, opts)?,
            };
            norms.push(sl.norm);
            slices.push(sl);
        }
        increasing_at_end |= still_increasing(&norms);
    }
    let any_div = slices.iter().any(|s| s.diverged);
    let value = slices.iter().fold(0.0f64, |m, s| m.max(s.norm));
    Ok(HardyEstimate { value, slices, increasing_at_end, diverging: any_div || increasing_at_end })
}
