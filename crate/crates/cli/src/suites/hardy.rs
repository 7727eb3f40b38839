use stablepot_core::analysis::{
    hardy_norm, majorant_f, omega_integrability, poisson_integral_d, prob_hardy_norm, BoundaryFunction, DiscreteMeasure, Flavor,
    HardyOptions, HarmonicRepresentation, Integrability, IntegralOptions, MeasurePart, Space,
};
use stablepot_core::halfspace::{kelvin, Kelvin, KelvinScaling};
use stablepot_core::sphere::{one_minus_phi, phi, phi_at_origin};
use stablepot_core::{Result, StableParams};

use super::SuiteParams;
use crate::report::Checks;

fn radius(x: &[f64]) -> f64 {
    x.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn run(sp: &SuiteParams, c: &mut Checks) -> Result<()> {
    let p = sp.stable()?;
    if !p.has_hitting() {
        c.skip("hardy", "alpha <= 1: the representations need alpha in (1, 2)", "hitting-requires-alpha-above-one");
        return Ok(());
    }
    if p.d() > 3 {
        c.skip("hardy", "sphere quadrature is implemented for d = 2, 3", "slice-norm-quadrature");
        return Ok(());
    }
    radial_norms(&p, c);
    closed_forms(&p, c);
    sandwich(&p, c);
    gallery(sp, c)?;
    Ok(())
}

fn radial_norms(p: &StableParams, c: &mut Checks) {
    // radial functions: any uniform grid integrates them exactly
    let opts = HardyOptions { resolution: if p.d() == 2 { 512 } else { 16 }, ..HardyOptions::default() };
    let cite = "hardy-norm-of-poisson-integral";
    for (name, q) in [("1", 1.0), ("2", 2.0), ("inf", f64::INFINITY)] {
        let id = format!("hardy-norm-hitting-probability-q{name}");
        c.run(&id, cite, |c| {
            let h = hardy_norm(Space::Sphere, p, |x| phi(p, radius(x)).unwrap_or(f64::NAN), q, &opts)?;
            c.close(&id, h.value, 1.0, 1e-3, cite);
            Ok(())
        });
        let id = format!("hardy-norm-escape-probability-q{name}");
        c.run(&id, cite, |c| {
            let h = hardy_norm(Space::Sphere, p, |x| one_minus_phi(p, radius(x)).unwrap_or(f64::NAN), q, &opts)?;
            c.close(&id, h.value, 1.0, 1e-3, cite);
            Ok(())
        });
    }
}

fn closed_forms(p: &StableParams, c: &mut Checks) {
    let d = p.d();
    let opts = IntegralOptions::default();
    let cite = "sphere-probabilistic-norm-closed-form";
    c.run("prob-norm-sphere", cite, |c| {
        let phi0 = phi_at_origin(p)?;
        let mut z1 = vec![0.0; d];
        z1[0] = 1.0;
        let mut z2 = vec![0.0; d];
        z2[1] = -1.0;
        let mu = DiscreteMeasure::new(vec![z1, z2], vec![1.5, -0.5])?;
        let rep = HarmonicRepresentation::sphere(MeasurePart::Atomic(mu), 0.5);
        let v = prob_hardy_norm(p, &rep, 1.0)?;
        let closed = phi0 * 2.0 + 0.5 * (1.0 - phi0);
        c.close("prob-norm-sphere", v, closed, 1e-14, cite);
        c.close("prob-norm-sphere-majorant", majorant_f(p, &rep, 1.0, &vec![0.0; d], opts)?, closed, 1e-6, cite);
        Ok(())
    });
    let cite = "halfspace-probabilistic-norm-closed-form";
    c.run("prob-norm-halfspace", cite, |c| {
        let mu = DiscreteMeasure::new(vec![vec![0.0; d - 1], vec![1.0; d - 1]], vec![1.0, -0.25])?;
        let rep = HarmonicRepresentation::halfspace(Flavor::Martin, MeasurePart::Atomic(mu), 3.0);
        let v = prob_hardy_norm(p, &rep, 1.0)?;
        c.close("prob-norm-halfspace", v, 4.25, 1e-14, cite);
        let mut e = vec![0.0; d];
        e[d - 1] = 1.0;
        c.close("prob-norm-halfspace-majorant", majorant_f(p, &rep, 1.0, &e, opts)?, 4.25, 1e-6, cite);
        Ok(())
    });
}

/// [phi(0) ^ (1 - phi(0))] |u|_h <= |u|_H <= |u|_h for mixed representations.
fn sandwich(p: &StableParams, c: &mut Checks) {
    let d = p.d();
    let cite = "probabilistic-norm-sandwich";
    let reps: Vec<(&str, BoundaryFunction, f64)> = vec![
        ("affine-density", BoundaryFunction::new(|z| 1.0 + 0.5 * z[0], f64::INFINITY), 0.5),
        ("constant-density", BoundaryFunction::constant(1.0), 1.0),
        ("cosine-density", BoundaryFunction::new(|z| 2.0 + z[1], f64::INFINITY), -0.5),
        ("signed-density", BoundaryFunction::new(|z| z[0], f64::INFINITY), 0.25),
        ("escape-only", BoundaryFunction::constant(0.0), 2.0),
    ];
    let opts = HardyOptions { levels: 12, resolution: if d == 2 { 64 } else { 12 }, ..HardyOptions::default() };
    let iopts = IntegralOptions { per_unit: 12, azimuths: 24 };
    for (name, f, cc) in reps {
        let id = format!("sandwich-{name}");
        c.run(&id, cite, |c| {
            let phi0 = phi_at_origin(p)?;
            let rep = HarmonicRepresentation::sphere(MeasurePart::Density(f), cc);
            let prob = prob_hardy_norm(p, &rep, 1.0)?;
            let h = hardy_norm(Space::Sphere, p, |x| poisson_integral_d(p, &rep, x, iopts).unwrap_or(f64::NAN), 1.0, &opts)?;
            let lo = phi0.min(1.0 - phi0) * h.value;
            // quadrature slack on both sides
            c.within(&id, prob, lo * (1.0 - 1e-6), h.value * (1.0 + 1e-6), cite);
            Ok(())
        });
    }
}

fn gallery(sp: &SuiteParams, c: &mut Checks) -> Result<()> {
    // the examples live in the plane
    let p = StableParams::new(2, sp.alpha)?;
    let a = p.alpha();
    let cite = "linear-function-not-in-hardy-space";
    c.run("gallery-linear-on-halfspace", cite, |c| {
        let h = hardy_norm(Space::Halfspace, &p, |x| x[0], 1.0, &HardyOptions::default())?;
        c.diverges("gallery-linear-on-halfspace", h.diverging, h.value, cite, None);
        Ok(())
    });
    let cite = "kelvin-transform-not-in-probabilistic-hardy-space";
    c.run("gallery-kelvin-on-halfspace", cite, |c| {
        // boundary trace of x1 |x|^{a-4}
        let f = BoundaryFunction::new(move |y| y[0] * y[0].abs().powf(a - 4.0), 1.0);
        let r = omega_integrability(&p, &f, 1.0, &[vec![0.0]])?;
        let value = match r {
            Integrability::Converges(v) => v,
            Integrability::Diverges => f64::INFINITY,
        };
        c.diverges("gallery-kelvin-on-halfspace", r == Integrability::Diverges, value, cite, None);
        Ok(())
    });
    let cite = "shifted-kelvin-transform-not-in-hardy-space";
    c.run("gallery-shifted-kelvin-on-sphere", cite, |c| {
        let u = |x: &[f64]| kelvin(Kelvin::KTildeAlpha, &p, KelvinScaling::HalfPower, |y| y[0], x).unwrap_or(f64::NAN);
        let opts = HardyOptions { foci: vec![vec![0.0, -1.0]], ..HardyOptions::default() };
        let h = hardy_norm(Space::Sphere, &p, u, 1.0, &opts)?;
        c.diverges("gallery-shifted-kelvin-on-sphere", h.diverging, h.value, cite, None);
        Ok(())
    });
    Ok(())
}
