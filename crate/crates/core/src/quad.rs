//! One-dimensional quadrature building blocks.

use rayon::prelude::*;

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, 0.0f64);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Pairwise summation: error grows like log n instead of n.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 32 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// Evaluate `f` over `0..n` (in parallel for large n) and return the values in
/// index order, so that any later reduction is independent of thread count.
pub fn ordered_map<F>(n: usize, f: F) -> Vec<f64>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    if n >= 2048 {
        (0..n).into_par_iter().map(&f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut abs = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        k += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            g += WG[j / 2] * (f1 + f2);
        }
    }
    (k * h, ((k - g) * h).abs(), abs * h.abs())
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    /// Integral of |f|, a scale for judging cancellation.
    pub abs_value: f64,
    pub converged: bool,
}

/// Adaptive Gauss-Kronrod (7/15) integration of `f` over [a, b].
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64, max_intervals: usize) -> Quadrature {
    if a == b {
        return Quadrature { value: 0.0, error: 0.0, abs_value: 0.0, converged: true };
    }
    let (v, e, m) = gk15(&mut f, a, b);
    let mut parts = vec![(a, b, v, e, m)];
    loop {
        let value: f64 = parts.iter().map(|p| p.2).sum();
        let error: f64 = parts.iter().map(|p| p.3).sum();
        let abs_value: f64 = parts.iter().map(|p| p.4).sum();
        let done = error <= abs_tol.max(rel_tol * value.abs());
        if done || parts.len() >= max_intervals {
            return Quadrature { value, error, abs_value, converged: done };
        }
        let (i, _) = parts
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc });
        let (lo, hi, ..) = parts.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            let value: f64 = parts.iter().map(|p| p.2).sum::<f64>();
            return Quadrature { value, error, abs_value, converged: false };
        }
        let (v1, e1, m1) = gk15(&mut f, lo, mid);
        let (v2, e2, m2) = gk15(&mut f, mid, hi);
        parts.push((lo, mid, v1, e1, m1));
        parts.push((mid, hi, v2, e2, m2));
    }
}

/// Radial nodes graded geometrically away from the origin:
/// r = scale * sinh(v) on v in [0, asinh(r_max/scale)], composite Gauss-Legendre
/// with `per_unit` nodes per unit of v. Returns (r, dr weight) pairs.
pub fn graded_radial(scale: f64, r_max: f64, per_unit: usize) -> Vec<(f64, f64)> {
    let vmax = (r_max / scale).asinh();
    let panels = vmax.ceil().max(1.0) as usize;
    let order = per_unit.max(2);
    let (x, w) = gauss_legendre(order);
    let width = vmax / panels as f64;
    let mut out = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let v0 = p as f64 * width;
        for (xi, wi) in x.iter().zip(&w) {
            let v = v0 + 0.5 * width * (xi + 1.0);
            out.push((scale * v.sinh(), 0.5 * width * wi * scale * v.cosh()));
        }
    }
    out
}
