//! Verification suites. Each returns entries; `run_suite` wraps them in a report.

mod fatou;
mod hardy;
mod identities;
mod montecarlo;
mod relativistic;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde_json::json;
use stablepot_core::{Error, Result, StableParams};

use crate::report::{Checks, Entry, VerificationReport};

pub const SUITES: [&str; 6] = ["identities", "hardy", "fatou", "relativistic", "montecarlo", "all"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteParams {
    pub d: usize,
    pub alpha: f64,
    pub m: f64,
    pub lambda: f64,
    pub seed: u64,
    /// Multiplies every numeric tolerance.
    pub tol_scale: f64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { d: 2, alpha: 1.5, m: 1.0, lambda: 0.5, seed: 42, tol_scale: 1.0 }
    }
}

impl SuiteParams {
    pub fn stable(&self) -> Result<StableParams> {
        StableParams::new(self.d, self.alpha)
    }

    fn rng(&self, salt: u64) -> ChaCha20Rng {
        let mut r = ChaCha20Rng::seed_from_u64(self.seed);
        r.set_stream(salt);
        r
    }
}

/// Uniform point on the unit sphere in R^d.
fn random_unit(d: usize, rng: &mut ChaCha20Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.into_iter().map(|a| a / n).collect();
        }
    }
}

fn scaled(v: &[f64], r: f64) -> Vec<f64> {
    v.iter().map(|a| a * r).collect()
}

type SuiteFn = fn(&SuiteParams, &mut Checks) -> Result<()>;

fn suite_fn(name: &str) -> Option<SuiteFn> {
    Some(match name {
        "identities" => identities::run,
        "hardy" => hardy::run,
        "fatou" => fatou::run,
        "relativistic" => relativistic::run,
        "montecarlo" => montecarlo::run,
        _ => return None,
    })
}

fn entries_of(name: &str, sp: &SuiteParams) -> Result<Vec<Entry>> {
    let f = suite_fn(name).ok_or_else(|| Error::Domain(format!("unknown suite {name:?}")))?;
    let mut c = Checks::new(sp.tol_scale);
    f(sp, &mut c)?;
    Ok(c.entries)
}

/// Runs a suite by name. Errors only for unknown suites or invalid
/// parameters; failing checks are report entries.
pub fn run_suite(name: &str, sp: &SuiteParams) -> Result<VerificationReport> {
    sp.stable()?;
    if !(sp.tol_scale > 0.0) {
        return Err(Error::Domain(format!("tolerance scale {} must be positive", sp.tol_scale)));
    }
    let params = json!({
        "d": sp.d,
        "alpha": sp.alpha,
        "m": sp.m,
        "lambda": sp.lambda,
        "seed": sp.seed,
        "tol_scale": sp.tol_scale,
    });
    let entries = if name == "all" {
        let mut all = Vec::new();
        for s in SUITES.iter().filter(|s| **s != "all") {
            for mut e in entries_of(s, sp)? {
                e.check_id = format!("{s}/{}", e.check_id);
                all.push(e);
            }
        }
        all
    } else {
        entries_of(name, sp)?
    };
    Ok(VerificationReport::new(name, params, entries))
}
