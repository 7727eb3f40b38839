use stablepot_core::halfspace::poisson_kernel_h;
use stablepot_core::quad::integrate;
use stablepot_core::relativistic::{hitting_prob_sphere_relativistic, lambda_potential, laplace_transform_hit, poisson_kernel_h_relativistic, RelativisticParams};
use stablepot_core::{Error, HalfspacePoint, Result, StableParams};

use super::SuiteParams;
use crate::report::Checks;

pub fn run(sp: &SuiteParams, c: &mut Checks) -> Result<()> {
    let a = sp.alpha;
    if !(a > 1.0 && a < 2.0) {
        c.skip("relativistic", "alpha <= 1: the hitting probabilities need alpha in (1, 2)", "hitting-requires-alpha-above-one");
        return Ok(());
    }
    let rp2 = RelativisticParams::new(StableParams::new(2, a)?, sp.m, 0.0)?;
    let rp3 = RelativisticParams::new(StableParams::new(3, a)?, sp.m, 0.0)?;
    let cite = "relativistic-hitting-probability";
    c.run("relativistic-plane-hits-sphere", cite, |c| {
        let v = hitting_prob_sphere_relativistic(&rp2, 1.0, &[3.0, -4.0])?;
        c.holds("relativistic-plane-hits-sphere", v == 1.0, cite, None);
        Ok(())
    });
    c.run("relativistic-on-sphere", cite, |c| {
        let v = hitting_prob_sphere_relativistic(&rp3, 1.0, &[0.0, 0.6, 0.8])?;
        c.close("relativistic-on-sphere", v, 1.0, 1e-6, cite);
        Ok(())
    });
    c.run("relativistic-off-sphere", cite, |c| {
        let v2 = hitting_prob_sphere_relativistic(&rp3, 1.0, &[2.0, 0.0, 0.0])?;
        let v4 = hitting_prob_sphere_relativistic(&rp3, 1.0, &[4.0, 0.0, 0.0])?;
        c.within("relativistic-off-sphere", v2, f64::MIN_POSITIVE, 1.0 - f64::EPSILON, cite);
        c.holds("relativistic-off-sphere-decreasing", v4 < v2, cite, Some(format!("values {v2} at 2, {v4} at 4")));
        Ok(())
    });
    let cite = "relativistic-potential-divergence";
    let low = RelativisticParams::new(StableParams::new(3, 0.9)?, sp.m, 0.5 * sp.m)?;
    let r = lambda_potential(&low, 1.0, 1.0);
    c.diverges("relativistic-divergence-low-alpha", matches!(r, Err(Error::Divergent(_))), f64::INFINITY, cite, r.err().map(|e| e.to_string()));
    let r = lambda_potential(&rp2, 1.0, 2.0);
    c.diverges("relativistic-divergence-plane-potential", matches!(r, Err(Error::Divergent(_))), f64::INFINITY, cite, r.err().map(|e| e.to_string()));
    let lam = sp.lambda.clamp(0.0, 0.999 * sp.m);
    let cite = "relativistic-killed-hitting-transform";
    c.run("relativistic-laplace-monotone", cite, |c| {
        let mut vals = Vec::new();
        for k in 1..=4 {
            let l = lam.max(0.05 * sp.m) * k as f64 / 4.0;
            vals.push(laplace_transform_hit(&RelativisticParams::new(rp3.base, sp.m, l)?, 1.0, &[1.8, 0.0, 0.0])?);
        }
        c.holds("relativistic-laplace-monotone", vals.windows(2).all(|w| w[1] <= w[0]), cite, Some(format!("values {vals:?}")));
        Ok(())
    });
    let cite = "relativistic-halfspace-harmonic-measure";
    let p = StableParams::new(2, a)?;
    c.run("relativistic-kernel-stable-limit", cite, |c| {
        let tiny = RelativisticParams::new(p, 1e-10, 0.0)?;
        let x = HalfspacePoint::new(vec![0.0], 1.0);
        let mut worst = 0.0f64;
        for &y in &[-5.0, -1.0, 0.0, 0.5, 3.0] {
            worst = worst.max((poisson_kernel_h_relativistic(&tiny, &x, &[y])? / poisson_kernel_h(&p, &x, &[y])? - 1.0).abs());
        }
        c.below("relativistic-kernel-stable-limit", worst, 1e-3, cite);
        Ok(())
    });
    c.run("relativistic-kernel-subprobability", cite, |c| {
        let rp = RelativisticParams::new(p, 1.0, 0.0)?;
        let x = HalfspacePoint::new(vec![0.0], 1.0);
        let mut err = None;
        let half_pi = std::f64::consts::FRAC_PI_2;
        let q = integrate(
            |t: f64| match poisson_kernel_h_relativistic(&rp, &x, &[t.tan()]) {
                Ok(v) => v / t.cos().powi(2),
                Err(e) => {
                    err = Some(e);
                    f64::NAN
                }
            },
            -half_pi,
            half_pi,
            1e-12,
            1e-10,
            4000,
        );
        if let Some(e) = err {
            return Err(e);
        }
        c.within("relativistic-kernel-subprobability", q.value, 0.0, 1.0 - 1e-6, cite);
        Ok(())
    });
    Ok(())
}
