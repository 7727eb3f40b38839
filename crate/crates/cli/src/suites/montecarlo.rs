use stablepot_core::montecarlo::{
    ball_radial_w_cdf, draw_parallel, halfplane_hit_cdf, hit_time_cdf, ks_test, sample_ball_exit_center, sample_halfplane_hit_with_time,
    walk_on_balls_phi, WalkConfig,
};
use stablepot_core::specfun::regularized_beta_cdf;
use stablepot_core::sphere::phi_at_origin;
use stablepot_core::{HalfspacePoint, Result, StableParams};

use super::SuiteParams;
use crate::report::Checks;

pub const N_EXACT: usize = 100_000;
pub const N_WALK: usize = 10_000;

pub fn run(sp: &SuiteParams, c: &mut Checks) -> Result<()> {
    let p = sp.stable()?;
    let a = p.alpha();
    let cite = "ball-exit-radius-beta-law";
    c.run("ball-exit-beta-oracle", cite, |c| {
        let mut worst = 0.0f64;
        for k in 1..20 {
            let w = k as f64 / 20.0;
            worst = worst.max((ball_radial_w_cdf(&p, w)? - regularized_beta_cdf(0.5 * a, 1.0 - 0.5 * a, w)?).abs());
        }
        c.below("ball-exit-beta-oracle", worst, 1e-8, cite);
        Ok(())
    });
    c.run("ball-exit-ks", cite, |c| {
        let y = draw_parallel(sp.seed, N_EXACT, |r| Ok(sample_ball_exit_center(&p, r)))?;
        let w: Vec<f64> = y.iter().map(|v| 1.0 / v.iter().map(|u| u * u).sum::<f64>()).collect();
        let ks = ks_test(&w, |v| regularized_beta_cdf(0.5 * a, 1.0 - 0.5 * a, v).unwrap_or(f64::NAN))?;
        c.below("ball-exit-ks", ks.statistic, ks.critical_01, cite);
        Ok(())
    });
    if !p.has_hitting() {
        c.skip("hitting-samplers", "alpha <= 1: hyperplanes and spheres are not hit", "hitting-requires-alpha-above-one");
        return Ok(());
    }
    let p2 = StableParams::new(2, a)?;
    let cite = "hyperplane-hitting-subordination";
    c.run("halfplane-hit-ks", cite, |c| {
        let x = HalfspacePoint::new(vec![0.0], 1.0);
        let draws = draw_parallel(sp.seed.wrapping_add(1), N_EXACT, |r| sample_halfplane_hit_with_time(&p2, &x, r))?;
        let y: Vec<f64> = draws.iter().map(|(v, _)| v[0]).collect();
        let t: Vec<f64> = draws.iter().map(|(_, t)| *t).collect();
        let ks = ks_test(&y, |v| halfplane_hit_cdf(&p2, &x, v).unwrap_or(f64::NAN))?;
        c.below("halfplane-hit-ks", ks.statistic, ks.critical_01, cite);
        let kt = ks_test(&t, |v| hit_time_cdf(a, 1.0, v).unwrap_or(f64::NAN))?;
        c.below("halfplane-hit-time-ks", kt.statistic, kt.critical_01, cite);
        let pos = y.iter().filter(|v| **v > 0.0).count() as f64 / N_EXACT as f64;
        c.close("halfplane-hit-sign-balance", pos, 0.5, 3.0 * (0.25 / N_EXACT as f64).sqrt(), cite);
        Ok(())
    });
    let cite = "hitting-probability-at-center";
    c.run("walk-on-balls-center", cite, |c| {
        let cfg = WalkConfig::default();
        let e = walk_on_balls_phi(&p2, &[0.0, 0.0], &cfg, N_WALK, sp.seed.wrapping_add(2))?;
        let exact = phi_at_origin(&p2)?;
        let band = 3.0 * e.stderr + e.bias_budget;
        c.entries.push(crate::report::Entry {
            check_id: "walk-on-balls-center".into(),
            status: if (e.estimate - exact).abs() <= band * c.tol_scale { crate::report::Status::Pass } else { crate::report::Status::Fail },
            value: crate::report::num(e.estimate),
            expected: crate::report::num(exact),
            tolerance: crate::report::num(band * c.tol_scale),
            citation: cite.into(),
            note: Some(format!("hits {} escapes {} inconclusive {}", e.counts.hits, e.counts.escapes, e.counts.inconclusive)),
        });
        c.below("walk-on-balls-bias-budget", e.bias_budget, 0.01, cite);
        Ok(())
    });
    Ok(())
}
