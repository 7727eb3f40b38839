use stablepot_core::montecarlo::*;
use stablepot_core::specfun::{regularized_beta_cdf, regularized_gamma_q};
use stablepot_core::sphere::phi_at_origin;
use stablepot_core::{HalfspacePoint, StableParams};

const N: usize = 100_000;

fn mean_sd(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let s = (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    (m, s)
}

#[test]
fn gamma_sampler_matches_incomplete_gamma() {
    for &shape in &[0.05, 0.25, 0.45, 2.5] {
        let g = draw_parallel(21, 20_000, |r| sample_gamma(shape, r)).unwrap();
        let ks = ks_test(&g, |x| 1.0 - regularized_gamma_q(shape, x).unwrap()).unwrap();
        assert!(ks.pass_01, "shape {shape}: {ks:?}");
    }
}

#[test]
fn halfplane_hit_positions_follow_the_kernel() {
    let p = StableParams::new(2, 1.5).unwrap();
    let x = HalfspacePoint::new(vec![0.0], 1.0);
    let draws = draw_parallel(7, N, |r| sample_halfplane_hit_with_time(&p, &x, r)).unwrap();
    let y: Vec<f64> = draws.iter().map(|(v, _)| v[0]).collect();
    let t: Vec<f64> = draws.iter().map(|(_, t)| *t).collect();
    let ks = ks_test(&y, |v| halfplane_hit_cdf(&p, &x, v).unwrap()).unwrap();
    assert!(ks.pass_01, "{ks:?}");
    let kt = ks_test(&t, |v| hit_time_cdf(1.5, 1.0, v).unwrap()).unwrap();
    assert!(kt.pass_01, "{kt:?}");
}

#[test]
fn halfplane_hits_are_symmetric_about_the_start() {
    let p = StableParams::new(3, 1.7).unwrap();
    let x = HalfspacePoint::new(vec![0.0, 0.0], 1.0);
    let y = draw_parallel(8, N, |r| sample_halfplane_hit(&p, &x, r)).unwrap();
    // heavy tails: test the sign and a bounded transform instead of the raw mean
    let s: Vec<f64> = y.iter().map(|v| v[0].atan()).collect();
    let (m, sd) = mean_sd(&s);
    assert!(m.abs() < 3.0 * sd / (N as f64).sqrt());
    assert!(y.iter().all(|v| v.len() == 2));
}

#[test]
fn ball_exit_radius_and_direction() {
    let p = StableParams::new(3, 1.2).unwrap();
    let y = draw_parallel(9, N, |r| Ok(sample_ball_exit_center(&p, r))).unwrap();
    let w: Vec<f64> = y.iter().map(|v| 1.0 / v.iter().map(|a| a * a).sum::<f64>()).collect();
    let ks = ks_test(&w, |v| regularized_beta_cdf(0.6, 0.4, v).unwrap()).unwrap();
    assert!(ks.pass_01, "{ks:?}");
    for j in 0..3 {
        let dir: Vec<f64> = y.iter().map(|v| v[j] / v.iter().map(|a| a * a).sum::<f64>().sqrt()).collect();
        let (m, sd) = mean_sd(&dir);
        assert!(m.abs() < 3.0 * sd / (N as f64).sqrt(), "coordinate {j}: {m}");
    }
    // P(R > 2) from the quadrature oracle
    let pr = ball_radial_w_cdf(&p, 0.25).unwrap();
    let frac = w.iter().filter(|&&v| v < 0.25).count() as f64 / N as f64;
    assert!((frac - pr).abs() < 3.0 * (pr * (1.0 - pr) / N as f64).sqrt());
}

#[test]
fn walk_on_balls_far_start() {
    let p = StableParams::new(2, 1.5).unwrap();
    let cfg = WalkConfig { r_max: 1e3, ..WalkConfig::default() };
    let e = walk_on_balls_phi(&p, &[0.99e3, 0.0], &cfg, 2000, 4).unwrap();
    let bound = stablepot_core::sphere::phi(&p, 0.9e3).unwrap();
    assert!(e.estimate <= bound + 3.0 * e.stderr + e.bias_budget);
    let z = phi_at_origin(&p).unwrap();
    assert!(z > 0.0 && z < 1.0);
}
