//! Plot-ready curves behind `stablepot report`.

use std::io::{self, Write};

use stablepot_core::analysis::{fatou_probe, hardy_norm, running_max, BoundaryFunction, HardyOptions, HarmonicRepresentation, IntegralOptions, MeasurePart, Space};
use stablepot_core::halfspace::poisson_kernel_h;
use stablepot_core::relativistic::{hitting_prob_sphere_relativistic, RelativisticParams};
use stablepot_core::sphere::{one_minus_phi, phi};
use stablepot_core::{Error, HalfspacePoint, Result, StableParams};

use crate::vector::RangeArg;

pub const CURVES: [&str; 6] = ["phi", "one-minus-phi", "poisson-H", "phi-rel", "hardy-schedule", "fatou-decay"];

/// '#' metadata lines, a column header, then rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(w, "# {k}={v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:?}")).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CurveArgs {
    pub range: Option<RangeArg>,
    pub log: bool,
    pub m: f64,
    pub x: Option<Vec<f64>>,
    pub depth: usize,
    pub beta: f64,
    pub seed: u64,
}

fn range(a: &CurveArgs, default: RangeArg) -> Vec<f64> {
    a.range.unwrap_or(default).points(a.log)
}

pub fn curve(name: &str, p: &StableParams, a: &CurveArgs) -> Result<Table> {
    let mut meta = vec![("curve".to_string(), name.to_string()), ("d".into(), p.d().to_string()), ("alpha".into(), p.alpha().to_string())];
    let (columns, rows): (Vec<&str>, Vec<Vec<f64>>) = match name {
        "phi" | "one-minus-phi" => {
            let rs = range(a, RangeArg { start: 0.01, end: 10.0, count: 200 });
            let f = if name == "phi" { phi } else { one_minus_phi };
            let rows = rs.iter().filter(|&&r| r != 1.0).map(|&r| Ok(vec![r, f(p, r)?])).collect::<Result<Vec<_>>>()?;
            (vec!["r", if name == "phi" { "phi" } else { "one_minus_phi" }], rows)
        }
        "poisson-H" => {
            let x = a.x.clone().unwrap_or_else(|| {
                let mut e = vec![0.0; p.d()];
                e[p.d() - 1] = 1.0;
                e
            });
            if x.len() != p.d() {
                return Err(Error::Domain(format!("--x needs {} coordinates", p.d())));
            }
            meta.push(("x".into(), format!("{x:?}")));
            let h = HalfspacePoint::new(x[..p.d() - 1].to_vec(), x[p.d() - 1]);
            let ys = range(a, RangeArg { start: -10.0, end: 10.0, count: 201 });
            let rows = ys
                .iter()
                .map(|&y| {
                    let mut yb = h.bar.clone();
                    if !yb.is_empty() {
                        yb[0] = y;
                    }
                    Ok(vec![y, poisson_kernel_h(p, &h, &yb)?])
                })
                .collect::<Result<Vec<_>>>()?;
            (vec!["y1", "poisson_h"], rows)
        }
        "phi-rel" => {
            meta.push(("m".into(), a.m.to_string()));
            let rp = RelativisticParams::new(*p, a.m, 0.0)?;
            let rs = range(a, RangeArg { start: 1.0, end: 10.0, count: 50 });
            let rows = rs
                .iter()
                .map(|&r| {
                    let mut x = vec![0.0; p.d()];
                    x[0] = r;
                    Ok(vec![r, hitting_prob_sphere_relativistic(&rp, 1.0, &x)?])
                })
                .collect::<Result<Vec<_>>>()?;
            (vec!["r", "phi_rel"], rows)
        }
        "hardy-schedule" => {
            // slice norms of the hitting probability, ordered by radius
            let opts = HardyOptions { resolution: if p.d() == 2 { 512 } else { 16 }, ..HardyOptions::default() };
            let h = hardy_norm(Space::Sphere, p, |x| phi(p, x.iter().map(|c| c * c).sum::<f64>().sqrt()).unwrap_or(f64::NAN), 1.0, &opts)?;
            let mut rows: Vec<Vec<f64>> = h.slices.iter().map(|s| vec![s.param, s.norm]).collect();
            rows.sort_by(|u, v| u[0].total_cmp(&v[0]));
            (vec!["r", "slice_norm_q1"], rows)
        }
        "fatou-decay" => {
            meta.push(("beta".into(), a.beta.to_string()));
            meta.push(("seed".into(), a.seed.to_string()));
            let mut y = vec![0.0; p.d()];
            y[0] = 0.6;
            y[1] = 0.8;
            let rep = HarmonicRepresentation::sphere(MeasurePart::Density(BoundaryFunction::new(|z| 1.0 + 0.5 * z[0] * z[1], f64::INFINITY)), 0.0);
            let s = fatou_probe(p, &rep, &y, a.beta, a.depth, a.seed, IntegralOptions::default())?;
            let rm = running_max(&s);
            let mut per = vec![0.0f64; a.depth];
            for e in &s {
                per[e.level - 1] = per[e.level - 1].max(e.deviation);
            }
            let rows = (0..a.depth).map(|k| vec![(k + 1) as f64, per[k], rm[k]]).collect();
            (vec!["level", "deviation", "running_max"], rows)
        }
        _ => return Err(Error::Domain(format!("unknown curve {name:?}; known: {}", CURVES.join(", ")))),
    };
    Ok(Table { meta, columns: columns.into_iter().map(String::from).collect(), rows })
}
