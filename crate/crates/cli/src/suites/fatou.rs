use stablepot_core::analysis::{fatou_probe, running_max, BoundaryFunction, Flavor, HarmonicRepresentation, IntegralOptions, MeasurePart};
use stablepot_core::{Result, StableParams};

use super::SuiteParams;
use crate::report::Checks;

pub const DEPTH: usize = 20;
/// Start of the wider window whose sup is reported alongside, for context.
pub const FROM_LEVEL: usize = 10;

pub fn run(sp: &SuiteParams, c: &mut Checks) -> Result<()> {
    let p = StableParams::new(2, sp.alpha)?;
    if !p.has_hitting() {
        c.skip("fatou", "alpha <= 1: the representations need alpha in (1, 2)", "hitting-requires-alpha-above-one");
        return Ok(());
    }
    let opts = IntegralOptions::default();
    let sphere = HarmonicRepresentation::sphere(MeasurePart::Density(BoundaryFunction::new(|z| 1.0 + 0.5 * z[0] * z[1], f64::INFINITY)), 0.0);
    let plane = HarmonicRepresentation::halfspace(
        Flavor::Poisson,
        MeasurePart::Density(BoundaryFunction::new(|y| (-y[0] * y[0]).exp(), 1.0).with_center(vec![0.0], 1.0).with_decay(60.0)),
        0.0,
    );
    let cases: [(&str, &HarmonicRepresentation, Vec<f64>, &str); 2] = [
        ("sphere", &sphere, vec![0.6, 0.8], "nontangential-limit-sphere"),
        ("hyperplane", &plane, vec![0.3], "nontangential-limit-hyperplane"),
    ];
    for (name, rep, y, cite) in cases {
        for (bname, beta) in [("0.5", 0.5), ("4", 4.0)] {
            let id = format!("fatou-{name}-beta-{bname}");
            c.run(&id, cite, |c| {
                let s = fatou_probe(&p, rep, &y, beta, DEPTH, sp.seed, opts)?;
                let rm = running_max(&s);
                c.below(&id, rm[DEPTH - 1], 0.01, cite);
                c.annotate(format!("sup over levels {FROM_LEVEL}..{DEPTH}: {:e}", rm[FROM_LEVEL - 1]));
                Ok(())
            });
        }
    }
    Ok(())
}
