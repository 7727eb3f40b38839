use rand::Rng;
use rayon::prelude::*;

use super::samplers::sample_ball_exit_center;
use super::{draw_parallel, RngStream, CHUNK};
use crate::error::{Error, Result};
use crate::params::{norm, StableParams};
use crate::sphere::{one_minus_phi, phi};

/// Stopping rules for the walk-on-balls chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkConfig {
    /// A walker closer than this to the unit sphere counts as a hit.
    pub eps_shell: f64,
    /// A walker farther than this from the origin counts as escaped.
    pub r_max: f64,
    /// Ball radius as a fraction of the distance to the sphere.
    pub kappa: f64,
    pub max_steps: usize,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig { eps_shell: 1e-5, r_max: 1e6, kappa: 1.0, max_steps: 100_000 }
    }
}

impl WalkConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps_shell > 0.0 && self.eps_shell < 0.5) {
            return Err(Error::Domain(format!("eps_shell = {} must lie in (0, 0.5)", self.eps_shell)));
        }
        if !(self.r_max > 1.0 + self.eps_shell) {
            return Err(Error::Domain(format!("r_max = {} must exceed 1", self.r_max)));
        }
        if !(self.kappa > 0.0 && self.kappa <= 1.0) {
            return Err(Error::Domain(format!("kappa = {} must lie in (0, 1]", self.kappa)));
        }
        if self.max_steps == 0 {
            return Err(Error::Domain("max_steps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkOutcome {
    Hit,
    Escape,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WalkCounts {
    pub hits: u64,
    pub escapes: u64,
    pub inconclusive: u64,
}

impl WalkCounts {
    pub fn record(&mut self, o: WalkOutcome) {
        match o {
            WalkOutcome::Hit => self.hits += 1,
            WalkOutcome::Escape => self.escapes += 1,
            WalkOutcome::Inconclusive => self.inconclusive += 1,
        }
    }

    pub fn merge(self, o: WalkCounts) -> WalkCounts {
        WalkCounts { hits: self.hits + o.hits, escapes: self.escapes + o.escapes, inconclusive: self.inconclusive + o.inconclusive }
    }

    pub fn total(&self) -> u64 {
        self.hits + self.escapes + self.inconclusive
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkEstimate {
    pub estimate: f64,
    pub stderr: f64,
    /// Bound on the systematic error from the stopping rules.
    pub bias_budget: f64,
    pub counts: WalkCounts,
}

/// One walker started at x.
pub fn walk_single<R: Rng + ?Sized>(p: &StableParams, x: &[f64], cfg: &WalkConfig, rng: &mut R) -> WalkOutcome {
    let mut cur = x.to_vec();
    for _ in 0..cfg.max_steps {
        let r = norm(&cur);
        let gap = (1.0 - r).abs();
        if gap < cfg.eps_shell {
            return WalkOutcome::Hit;
        }
        if r > cfg.r_max {
            return WalkOutcome::Escape;
        }
        let rho = cfg.kappa * gap;
        for (c, u) in cur.iter_mut().zip(sample_ball_exit_center(p, rng)) {
            *c += rho * u;
        }
    }
    let r = norm(&cur);
    if (1.0 - r).abs() < cfg.eps_shell {
        WalkOutcome::Hit
    } else if r > cfg.r_max {
        WalkOutcome::Escape
    } else {
        WalkOutcome::Inconclusive
    }
}

/// Systematic error of the stopping rules: the largest miss probability on
/// the shell plus the largest hitting probability beyond r_max (scanned on
/// [r_max, 10 r_max], which presumes radial monotonicity far out).
fn stopping_bias(p: &StableParams, cfg: &WalkConfig) -> Result<f64> {
    let mut shell = 0.0f64;
    for k in 0..=32 {
        let r = 1.0 - cfg.eps_shell + 2.0 * cfg.eps_shell * k as f64 / 32.0;
        if r != 1.0 {
            shell = shell.max(one_minus_phi(p, r)?);
        }
    }
    let mut far = 0.0f64;
    for k in 0..=32 {
        let r = cfg.r_max * 10f64.powf(k as f64 / 32.0);
        far = far.max(phi(p, r)?);
    }
    Ok(shell + far)
}

fn check_walk(p: &StableParams, x: &[f64], cfg: &WalkConfig, n: usize) -> Result<()> {
    p.require_hitting()?;
    p.check_dim(x, "x")?;
    cfg.validate()?;
    if n == 0 {
        return Err(Error::Domain("need at least one walker".into()));
    }
    Ok(())
}

/// Estimate, standard error and bias budget from merged counts.
pub fn summarize_walk(p: &StableParams, cfg: &WalkConfig, counts: WalkCounts) -> Result<WalkEstimate> {
    let nf = counts.total() as f64;
    if nf == 0.0 {
        return Err(Error::Domain("no walkers recorded".into()));
    }
    let est = counts.hits as f64 / nf;
    Ok(WalkEstimate {
        estimate: est,
        stderr: (est * (1.0 - est) / nf).sqrt(),
        bias_budget: stopping_bias(p, cfg)? + counts.inconclusive as f64 / nf,
        counts,
    })
}

/// Outcome of every walker, walker i using stream i / CHUNK.
pub fn walk_outcomes(p: &StableParams, x: &[f64], cfg: &WalkConfig, n: usize, seed: u64) -> Result<Vec<WalkOutcome>> {
    check_walk(p, x, cfg, n)?;
    draw_parallel(seed, n, |r| Ok(walk_single(p, x, cfg, r)))
}

/// Walk-on-balls estimate of the probability that the process from x ever
/// hits the unit sphere. Walkers are split into streams of `CHUNK`, so the
/// result is independent of the thread count.
pub fn walk_on_balls_phi(p: &StableParams, x: &[f64], cfg: &WalkConfig, n: usize, seed: u64) -> Result<WalkEstimate> {
    check_walk(p, x, cfg, n)?;
    let chunks = n.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = RngStream::new(seed, c as u64).rng();
            let mut k = WalkCounts::default();
            for _ in 0..CHUNK.min(n - c * CHUNK) {
                k.record(walk_single(p, x, cfg, &mut rng));
            }
            k
        })
        .reduce(WalkCounts::default, WalkCounts::merge);
    summarize_walk(p, cfg, counts)
}
