use proptest::prelude::*;
use stablepot_core::halfspace::*;
use stablepot_core::montecarlo::*;
use stablepot_core::relativistic::*;
use stablepot_core::specfun::*;
use stablepot_core::sphere::*;
use stablepot_core::{BoundaryPoint, HalfspacePoint, StableParams};

fn params() -> impl Strategy<Value = StableParams> {
    (2usize..=4, 1.05f64..1.95).prop_map(|(d, a)| StableParams::new(d, a).unwrap())
}

fn unit(d: usize, raw: &[f64]) -> Vec<f64> {
    let v = &raw[..d];
    let n = v.iter().map(|a| a * a).sum::<f64>().sqrt().max(1e-9);
    v.iter().map(|a| a / n).collect()
}

fn raw() -> impl Strategy<Value = Vec<f64>> {
    // every prefix of length >= 2 stays away from the origin
    prop::collection::vec(-1.0f64..1.0, 4).prop_filter("nonzero", |v| v[0] * v[0] + v[1] * v[1] > 1e-2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ln_gamma_recurrence(x in 0.1f64..50.0) {
        let lhs = ln_gamma(x + 1.0).unwrap() - ln_gamma(x).unwrap();
        prop_assert!((lhs - x.ln()).abs() < 1e-12);
    }

    #[test]
    fn series_stable_under_more_terms(a in 0.1f64..2.0, b in 0.1f64..2.0, c in 0.5f64..3.0, s in 0.0f64..0.9) {
        let base = SeriesControl::default();
        let v1 = gauss_2f1(a, b, c, s, base).unwrap();
        let v2 = gauss_2f1(a, b, c, s, SeriesControl { max_terms: 2 * base.max_terms, ..base }).unwrap();
        prop_assert!((v1 - v2).abs() <= base.rel_tol * v1.abs());
    }

    #[test]
    fn exp_is_mittag_leffler(t in 0.0f64..20.0) {
        let e = mittag_leffler(1.0, 1.0, t).unwrap();
        prop_assert!((e / t.exp() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hitting_probability_is_radial_and_bounded(p in params(), v in raw(), w in raw(), r in 0.0f64..20.0) {
        let d = p.d();
        let x: Vec<f64> = unit(d, &v).iter().map(|c| c * r).collect();
        let y: Vec<f64> = unit(d, &w).iter().map(|c| c * r).collect();
        prop_assume!((r - 1.0).abs() > 1e-9);
        let a = hitting_prob_sphere(&p, &x).unwrap();
        let b = hitting_prob_sphere(&p, &y).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        let n = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        prop_assert_eq!(a, phi(&p, n).unwrap());
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn sphere_kernels_positive_and_martin_is_ratio(p in params(), v in raw(), w in raw(), r in 0.05f64..0.95, s in 0.05f64..0.95) {
        let d = p.d();
        let z = unit(d, &w);
        let x: Vec<f64> = unit(d, &v).iter().map(|c| c * r).collect();
        let y: Vec<f64> = z.iter().map(|c| c * s).collect();
        prop_assert!(poisson_kernel_d(&p, &x, &z).unwrap() > 0.0);
        prop_assert!(green_d(&p, &x, &y).unwrap() >= 0.0);
        let m = martin_d(&p, &x, &BoundaryPoint::Finite(z.clone())).unwrap();
        let ratio = poisson_kernel_d(&p, &x, &z).unwrap() / poisson_kernel_d(&p, &vec![0.0; d], &z).unwrap();
        prop_assert!((m / ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn halfspace_green_across_the_plane(p in params(), v in raw(), w in raw(), s in 0.1f64..3.0, t in 0.1f64..3.0) {
        let d = p.d();
        let x = HalfspacePoint::new(v[..d - 1].to_vec(), s);
        let y = HalfspacePoint::new(w[..d - 1].to_vec(), -t);
        let g = green_h(&p, &x, &y).unwrap();
        prop_assert!(g.is_finite() && g > 0.0);
    }

    #[test]
    fn halfspace_green_scaling(p in params(), v in raw(), w in raw(), s in 0.1f64..3.0, t in -3.0f64..3.0, lam in 0.1f64..10.0) {
        prop_assume!(t.abs() > 0.1);
        let d = p.d();
        let x = HalfspacePoint::new(v[..d - 1].to_vec(), s);
        let y = HalfspacePoint::new(w[..d - 1].to_vec(), t);
        let xs = HalfspacePoint::new(x.bar.iter().map(|c| c * lam).collect(), s * lam);
        let ys = HalfspacePoint::new(y.bar.iter().map(|c| c * lam).collect(), t * lam);
        let g = green_h(&p, &x, &y).unwrap();
        let gs = green_h(&p, &xs, &ys).unwrap();
        prop_assert!((gs / (lam.powf(p.alpha() - d as f64) * g) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn halfspace_martin_times_kernel(p in params(), v in raw(), w in raw(), s in -3.0f64..3.0) {
        prop_assume!(s.abs() > 0.05);
        let d = p.d();
        let x = HalfspacePoint::new(v[..d - 1].to_vec(), s);
        let z = w[..d - 1].to_vec();
        let e = HalfspacePoint::new(vec![0.0; d - 1], 1.0);
        let lhs = martin_h(&p, &x, &BoundaryPoint::Finite(z.clone())).unwrap() * poisson_kernel_h(&p, &e, &z).unwrap();
        let rhs = poisson_kernel_h(&p, &x, &z).unwrap();
        prop_assert!((lhs / rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tilde_inversion_is_involution(v in raw(), r in 0.1f64..5.0) {
        let x: Vec<f64> = unit(3, &v).iter().map(|c| c * r).collect();
        let mut pole = x.clone();
        pole[2] += 1.0;
        prop_assume!(pole.iter().map(|a| a * a).sum::<f64>() > 1e-2);
        let y = invert_point(Inversion::TTilde, &x).unwrap();
        let back = invert_point(Inversion::TTilde, &y).unwrap();
        for (a, b) in x.iter().zip(&back) {
            prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn relativistic_hitting_in_unit_interval(rx in 1.1f64..6.0, m in 0.2f64..2.0) {
        let rp = RelativisticParams::new(StableParams::new(3, 1.5).unwrap(), m, 0.0).unwrap();
        let v = hitting_prob_sphere_relativistic(&rp, 1.0, &[rx, 0.0, 0.0]).unwrap();
        prop_assert!(v > 0.0 && v <= 1.0);
    }

    #[test]
    fn relativistic_potential_symmetric(x in 0.2f64..3.0, y in 0.2f64..3.0, l in 0.0f64..0.9) {
        let rp = RelativisticParams::new(StableParams::new(3, 1.5).unwrap(), 1.0, l).unwrap();
        let a = lambda_potential(&rp, x, y).unwrap();
        let b = lambda_potential(&rp, y, x).unwrap();
        prop_assert!((a / b - 1.0).abs() < 1e-8);
    }

    #[test]
    fn halfplane_draws_are_reproducible(seed in any::<u64>(), stream in any::<u64>()) {
        let p = StableParams::new(2, 1.5).unwrap();
        let x = HalfspacePoint::new(vec![0.0], 1.0);
        let a: Vec<Vec<f64>> = { let mut r = RngStream::new(seed, stream).rng(); (0..20).map(|_| sample_halfplane_hit(&p, &x, &mut r).unwrap()).collect() };
        let b: Vec<Vec<f64>> = { let mut r = RngStream::new(seed, stream).rng(); (0..20).map(|_| sample_halfplane_hit(&p, &x, &mut r).unwrap()).collect() };
        prop_assert_eq!(a.iter().flatten().map(|v| v.to_bits()).collect::<Vec<_>>(), b.iter().flatten().map(|v| v.to_bits()).collect::<Vec<_>>());
    }

    #[test]
    fn walk_counts_merge_order_free(a in (0u64..1000, 0u64..1000, 0u64..10), b in (0u64..1000, 0u64..1000, 0u64..10), c in (0u64..1000, 0u64..1000, 0u64..10)) {
        let k = |t: (u64, u64, u64)| WalkCounts { hits: t.0, escapes: t.1, inconclusive: t.2 };
        prop_assert_eq!(k(a).merge(k(b)).merge(k(c)), k(c).merge(k(b).merge(k(a))));
    }
}
