use crate::error::{Error, Result};
use crate::specfun::{chi2_quantile, regularized_gamma_q};

/// Asymptotic Kolmogorov critical values at levels 0.05 and 0.01, times sqrt(n).
const KS_05: f64 = 1.358;
const KS_01: f64 = 1.628;

/// P(K > lambda) for the Kolmogorov distribution.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut s = 0.0;
    for k in 1..200 {
        let k = k as f64;
        let t = (-2.0 * k * k * lambda * lambda).exp();
        s += if k as u64 % 2 == 1 { t } else { -t };
        if t < 1e-18 {
            break;
        }
    }
    (2.0 * s).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub n: usize,
    pub statistic: f64,
    pub p_value: f64,
    pub critical_05: f64,
    pub critical_01: f64,
    pub pass_05: bool,
    pub pass_01: bool,
}

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
pub fn ks_test<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> Result<KsResult> {
    if sample.is_empty() {
        return Err(Error::Domain("KS test needs a nonempty sample".into()));
    }
    let mut xs = sample.to_vec();
    if xs.iter().any(|v| v.is_nan()) {
        return Err(Error::Domain("sample contains NaN".into()));
    }
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::Domain(format!("reference CDF returned {f} at {x}")));
        }
        d = d.max((i + 1) as f64 / nf - f).max(f - i as f64 / nf);
    }
    let sq = nf.sqrt();
    let p_value = kolmogorov_sf((sq + 0.12 + 0.11 / sq) * d);
    let (c05, c01) = (KS_05 / sq, KS_01 / sq);
    Ok(KsResult { n, statistic: d, p_value, critical_05: c05, critical_01: c01, pass_05: d < c05, pass_01: d < c01 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chi2Result {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    pub critical_05: f64,
    pub critical_01: f64,
    pub pass_05: bool,
    pub pass_01: bool,
}

/// Pearson chi-square test of observed counts against expected counts.
/// Every bin must expect at least 5 counts.
pub fn chi2_test(observed: &[u64], expected: &[f64]) -> Result<Chi2Result> {
    if observed.len() != expected.len() || observed.len() < 2 {
        return Err(Error::Domain("chi-square needs matching bins, at least two".into()));
    }
    if let Some((bin, &e)) = expected.iter().enumerate().find(|(_, &e)| !(e >= 5.0)) {
        return Err(Error::UnderfilledBin { bin, expected: e });
    }
    let statistic: f64 = observed.iter().zip(expected).map(|(&o, &e)| (o as f64 - e).powi(2) / e).sum();
    let df = observed.len() - 1;
    let dff = df as f64;
    let c05 = chi2_quantile(dff, 0.05)?;
    let c01 = chi2_quantile(dff, 0.01)?;
    Ok(Chi2Result {
        statistic,
        df,
        p_value: regularized_gamma_q(0.5 * dff, 0.5 * statistic)?,
        critical_05: c05,
        critical_01: c01,
        pass_05: statistic < c05,
        pass_01: statistic < c01,
    })
}

/// Reference law for `validate_empirical`.
pub enum Reference<'a> {
    Cdf(&'a dyn Fn(f64) -> f64),
    /// Bin edges (increasing, length k + 1) and the probability of each bin.
    Binned { edges: Vec<f64>, probs: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GofTest {
    Ks,
    Chi2,
}

/// Outcome of a goodness-of-fit test at levels 0.05 and 0.01.
#[derive(Debug, Clone, PartialEq)]
pub struct Validation {
    pub test: GofTest,
    pub statistic: f64,
    pub p_value: f64,
    pub critical_05: f64,
    pub critical_01: f64,
    pub pass_05: bool,
    pub pass_01: bool,
}

pub fn validate_empirical(sample: &[f64], reference: &Reference<'_>, test: GofTest) -> Result<Validation> {
    match (test, reference) {
        (GofTest::Ks, Reference::Cdf(f)) => {
            let r = ks_test(sample, f)?;
            Ok(Validation {
                test,
                statistic: r.statistic,
                p_value: r.p_value,
                critical_05: r.critical_05,
                critical_01: r.critical_01,
                pass_05: r.pass_05,
                pass_01: r.pass_01,
            })
        }
        (GofTest::Chi2, Reference::Binned { edges, probs }) => {
            if edges.len() != probs.len() + 1 || edges.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::Domain("bin edges must increase and number one more than the bins".into()));
            }
            let mut counts = vec![0u64; probs.len()];
            for &v in sample {
                let k = edges.partition_point(|&e| e <= v);
                if k >= 1 && k <= probs.len() {
                    counts[k - 1] += 1;
                }
            }
            let n = sample.len() as f64;
            let expected: Vec<f64> = probs.iter().map(|q| q * n).collect();
            let r = chi2_test(&counts, &expected)?;
            Ok(Validation {
                test,
                statistic: r.statistic,
                p_value: r.p_value,
                critical_05: r.critical_05,
                critical_01: r.critical_01,
                pass_05: r.pass_05,
                pass_01: r.pass_01,
            })
        }
        (GofTest::Ks, _) => Err(Error::Domain("KS test needs a CDF reference".into())),
        (GofTest::Chi2, _) => Err(Error::Domain("chi-square test needs a binned reference".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::RngStream;
    use rand::Rng;
    use rand_distr::StandardNormal;

    fn normal_cdf(x: f64) -> f64 {
        let p = 0.5 * crate::specfun::regularized_gamma_p(0.5, 0.5 * x * x).unwrap();
        if x < 0.0 { 0.5 - p } else { 0.5 + p }
    }

    #[test]
    fn kolmogorov_reference_points() {
        assert!((kolmogorov_sf(1.358) - 0.05).abs() < 1e-3);
        assert!((kolmogorov_sf(1.628) - 0.01).abs() < 1e-3);
    }

    #[test]
    fn uniform_sample_passes() {
        let mut r = RngStream::new(11, 0).rng();
        let s: Vec<f64> = (0..10_000).map(|_| r.gen::<f64>()).collect();
        let v = validate_empirical(&s, &Reference::Cdf(&|x: f64| x.clamp(0.0, 1.0)), GofTest::Ks).unwrap();
        assert!(v.pass_05, "{v:?}");
    }

    #[test]
    fn shifted_sample_fails() {
        let mut r = RngStream::new(12, 0).rng();
        let s: Vec<f64> = (0..100_000).map(|_| r.sample::<f64, _>(StandardNormal) + 0.5).collect();
        let v = validate_empirical(&s, &Reference::Cdf(&normal_cdf), GofTest::Ks).unwrap();
        assert!(!v.pass_01);
    }

    #[test]
    fn chi2_uniform_and_underfilled() {
        let mut r = RngStream::new(13, 0).rng();
        let s: Vec<f64> = (0..10_000).map(|_| r.gen::<f64>()).collect();
        let edges: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        let v = validate_empirical(&s, &Reference::Binned { edges: edges.clone(), probs: vec![0.1; 10] }, GofTest::Chi2).unwrap();
        assert!(v.pass_05, "{v:?}");
        let few = &s[..30];
        assert!(matches!(
            validate_empirical(few, &Reference::Binned { edges, probs: vec![0.1; 10] }, GofTest::Chi2),
            Err(Error::UnderfilledBin { .. })
        ));
    }
}
