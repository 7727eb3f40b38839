//! Kernel registry behind `stablepot eval`.

use stablepot_core::halfspace::{green_h, martin_h, poisson_kernel_h};
use stablepot_core::relativistic::{hitting_prob_sphere_relativistic, lambda_potential, poisson_kernel_h_relativistic, RelativisticParams};
use stablepot_core::sphere::{ball_poisson, green_d, hitting_prob_sphere, martin_d, poisson_kernel_d};
use stablepot_core::{BoundaryPoint, Error, HalfspacePoint, Result, StableParams};

use crate::vector::PointArg;

pub const KERNELS: [&str; 11] =
    ["phi", "poisson-D", "green-D", "martin-D", "poisson-H", "green-H", "martin-H", "ball-poisson", "phi-rel", "poisson-H-rel", "u-lambda"];

/// Arguments shared by all kernels; each kernel reads what it needs.
#[derive(Debug, Clone, Default)]
pub struct KernelArgs {
    pub x: Option<PointArg>,
    pub y: Option<PointArg>,
    pub z: Option<PointArg>,
    pub a: Option<PointArg>,
    pub r: Option<f64>,
    pub m: f64,
    pub lambda: f64,
}

fn need<'a>(v: &'a Option<PointArg>, name: &str) -> Result<&'a PointArg> {
    v.as_ref().ok_or_else(|| Error::Domain(format!("kernel needs --{name}")))
}

fn fin(v: &Option<PointArg>, name: &str) -> Result<Vec<f64>> {
    need(v, name)?.finite(name).map_err(Error::Domain)
}

fn half(p: &StableParams, v: Vec<f64>, name: &str) -> Result<HalfspacePoint> {
    if v.len() != p.d() {
        return Err(Error::Domain(format!("--{name} needs {} coordinates", p.d())));
    }
    Ok(HalfspacePoint::new(v[..v.len() - 1].to_vec(), v[v.len() - 1]))
}

/// A hyperplane point given with d - 1 coordinates, or d with last 0.
fn on_plane(p: &StableParams, v: Vec<f64>, name: &str) -> Result<Vec<f64>> {
    let d = p.d();
    if v.len() == d - 1 {
        Ok(v)
    } else if v.len() == d && v[d - 1] == 0.0 {
        Ok(v[..d - 1].to_vec())
    } else {
        Err(Error::Domain(format!("--{name} must be a hyperplane point ({} coordinates, or {d} with last 0)", d - 1)))
    }
}

fn boundary(p: &StableParams, v: &PointArg, plane: bool, name: &str) -> Result<BoundaryPoint> {
    match v {
        PointArg::Infinity => Ok(BoundaryPoint::Infinity),
        PointArg::Finite(c) => Ok(BoundaryPoint::Finite(if plane { on_plane(p, c.clone(), name)? } else { c.clone() })),
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn eval_kernel(name: &str, p: &StableParams, k: &KernelArgs) -> Result<f64> {
    match name {
        "phi" => match (&k.x, k.r) {
            (Some(_), _) => hitting_prob_sphere(p, &fin(&k.x, "x")?),
            (None, Some(r)) => stablepot_core::sphere::phi(p, r),
            _ => Err(Error::Domain("phi needs --x or --r".into())),
        },
        "poisson-D" => poisson_kernel_d(p, &fin(&k.x, "x")?, &fin(&k.z, "z")?),
        "green-D" => green_d(p, &fin(&k.x, "x")?, &fin(&k.y, "y")?),
        "martin-D" => martin_d(p, &fin(&k.x, "x")?, &boundary(p, need(&k.z, "z")?, false, "z")?),
        "poisson-H" => poisson_kernel_h(p, &half(p, fin(&k.x, "x")?, "x")?, &on_plane(p, fin(&k.z, "z")?, "z")?),
        "green-H" => green_h(p, &half(p, fin(&k.x, "x")?, "x")?, &half(p, fin(&k.y, "y")?, "y")?),
        "martin-H" => martin_h(p, &half(p, fin(&k.x, "x")?, "x")?, &boundary(p, need(&k.z, "z")?, true, "z")?),
        "ball-poisson" => {
            let a = k.a.as_ref().map(|v| v.finite("a")).transpose().map_err(Error::Domain)?.unwrap_or_else(|| vec![0.0; p.d()]);
            ball_poisson(p, &a, k.r.unwrap_or(1.0), &fin(&k.x, "x")?, &fin(&k.y, "y")?)
        }
        "phi-rel" => {
            let rp = RelativisticParams::new(*p, k.m, 0.0)?;
            hitting_prob_sphere_relativistic(&rp, k.r.unwrap_or(1.0), &fin(&k.x, "x")?)
        }
        "poisson-H-rel" => {
            let rp = RelativisticParams::new(*p, k.m, 0.0)?;
            poisson_kernel_h_relativistic(&rp, &half(p, fin(&k.x, "x")?, "x")?, &on_plane(p, fin(&k.z, "z")?, "z")?)
        }
        "u-lambda" => {
            let rp = RelativisticParams::new(*p, k.m, k.lambda)?;
            lambda_potential(&rp, norm(&fin(&k.x, "x")?), norm(&fin(&k.y, "y")?))
        }
        _ => Err(Error::Domain(format!("unknown kernel {name:?}; known: {}", KERNELS.join(", ")))),
    }
}
