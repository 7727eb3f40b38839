//! Samplers behind `stablepot sample`.

use stablepot_core::montecarlo::{
    draw_parallel, sample_ball_exit_center, sample_halfplane_hit_with_time, summarize_walk, walk_outcomes, EmpiricalSample, SampleMeta,
    WalkConfig, WalkCounts, WalkOutcome,
};
use stablepot_core::{Error, HalfspacePoint, Result, StableParams};

pub const SAMPLERS: [&str; 3] = ["ball-exit", "halfplane-hit", "walk-on-balls"];

/// A sample together with its one-line summary.
pub struct SampleRun {
    pub sample: EmpiricalSample,
    pub summary: String,
}

fn mean_stderr(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = if v.len() > 1 { v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    (m, (var / n).sqrt())
}

fn fmt_point(x: &[f64]) -> String {
    x.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join(";")
}

pub fn run_sampler(name: &str, p: &StableParams, x: Option<Vec<f64>>, n: usize, seed: u64, cfg: WalkConfig) -> Result<SampleRun> {
    if n == 0 {
        return Err(Error::Domain("--n must be positive".into()));
    }
    let d = p.d();
    let meta = |extra: Vec<(String, String)>| SampleMeta { sampler: name.to_string(), d, alpha: p.alpha(), seed, n, extra };
    match name {
        "ball-exit" => {
            let draws = draw_parallel(seed, n, |r| Ok(sample_ball_exit_center(p, r)))?;
            let cols = (1..=d).map(|i| format!("y{i}")).collect();
            let radii: Vec<f64> = draws.iter().map(|v| v.iter().map(|c| c * c).sum::<f64>().sqrt()).collect();
            let first: Vec<f64> = draws.iter().map(|v| v[0]).collect();
            let (m1, s1) = mean_stderr(&first);
            let inv: Vec<f64> = radii.iter().map(|r| 1.0 / (r * r)).collect();
            let (mw, sw) = mean_stderr(&inv);
            let sample = EmpiricalSample::new(meta(vec![("start".into(), "center of the unit ball".into())]), cols, draws)?;
            Ok(SampleRun { sample, summary: format!("n={n} mean_y1={m1} stderr_y1={s1} mean_inv_r2={mw} stderr_inv_r2={sw}") })
        }
        "halfplane-hit" => {
            let x = x.unwrap_or_else(|| {
                let mut e = vec![0.0; d];
                e[d - 1] = 1.0;
                e
            });
            if x.len() != d {
                return Err(Error::Domain(format!("--x needs {d} coordinates")));
            }
            let h = HalfspacePoint::new(x[..d - 1].to_vec(), x[d - 1]);
            let draws = draw_parallel(seed, n, |r| {
                let (mut y, t) = sample_halfplane_hit_with_time(p, &h, r)?;
                y.push(0.0);
                y.push(t);
                Ok(y)
            })?;
            let mut cols: Vec<String> = (1..=d).map(|i| format!("y{i}")).collect();
            cols.push("t0".into());
            let mut first: Vec<f64> = draws.iter().map(|v| v[0]).collect();
            let (m1, s1) = mean_stderr(&first);
            let pos = first.iter().filter(|&&v| v > x[0]).count() as f64 / n as f64;
            first.sort_by(f64::total_cmp);
            let med = first[n / 2];
            let sample = EmpiricalSample::new(meta(vec![("x".into(), fmt_point(&x))]), cols, draws)?;
            // the hit law has no mean for alpha < 2; median and sign balance are the robust summaries
            Ok(SampleRun { sample, summary: format!("n={n} mean_y1={m1} stderr_y1={s1} median_y1={med} frac_right={pos}") })
        }
        "walk-on-balls" => {
            let x = x.unwrap_or_else(|| vec![0.0; d]);
            let outcomes = walk_outcomes(p, &x, &cfg, n, seed)?;
            let mut counts = WalkCounts::default();
            let draws = outcomes
                .iter()
                .map(|&o| {
                    counts.record(o);
                    vec![match o {
                        WalkOutcome::Hit => 1.0,
                        WalkOutcome::Escape => 0.0,
                        WalkOutcome::Inconclusive => -1.0,
                    }]
                })
                .collect();
            let e = summarize_walk(p, &cfg, counts)?;
            let extra = vec![
                ("x".into(), fmt_point(&x)),
                ("eps_shell".into(), cfg.eps_shell.to_string()),
                ("r_max".into(), cfg.r_max.to_string()),
                ("kappa".into(), cfg.kappa.to_string()),
                ("max_steps".into(), cfg.max_steps.to_string()),
                ("outcome_codes".into(), "1 hit; 0 escape; -1 inconclusive".into()),
            ];
            let sample = EmpiricalSample::new(meta(extra), vec!["outcome".into()], draws)?;
            Ok(SampleRun {
                sample,
                summary: format!(
                    "n={n} estimate={} stderr={} bias_budget={} hits={} escapes={} inconclusive={}",
                    e.estimate, e.stderr, e.bias_budget, counts.hits, counts.escapes, counts.inconclusive
                ),
            })
        }
        _ => Err(Error::Domain(format!("unknown sampler {name:?}; known: {}", SAMPLERS.join(", ")))),
    }
}
