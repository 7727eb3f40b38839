//! Command-line front end: kernel evaluation, verification suites,
//! samplers and plot-ready curves.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curves;
pub mod kernels;
pub mod report;
pub mod sample;
pub mod suites;
pub mod vector;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stablepot_core::montecarlo::WalkConfig;
use stablepot_core::StableParams;

use crate::vector::{parse_point, parse_range, PointArg, RangeArg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Seed used when --seed is not given; it is echoed in every output.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "stablepot", version, about = "Potential theory of symmetric stable processes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Dimension.
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Stability index in (0, 2).
    #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Mass of the relativistic process.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub m: f64,
    /// Killing rate, 0 <= lambda < m.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a kernel at given points.
    Eval {
        /// One of: phi, poisson-D, green-D, martin-D, poisson-H, green-H,
        /// martin-H, ball-poisson, phi-rel, poisson-H-rel, u-lambda.
        kernel: String,
        #[command(flatten)]
        common: Common,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        x: Option<PointArg>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        y: Option<PointArg>,
        /// Boundary point; "inf" for the point at infinity.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        z: Option<PointArg>,
        /// Ball center (ball-poisson).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        a: Option<PointArg>,
        /// Radius (phi, ball-poisson, phi-rel).
        #[arg(long, allow_hyphen_values = true)]
        r: Option<f64>,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        /// One of: identities, hardy, fatou, relativistic, montecarlo, all.
        suite: String,
        #[command(flatten)]
        common: Common,
        /// Multiplies every numeric tolerance.
        #[arg(long, default_value_t = 1.0)]
        tol: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw samples and write them as CSV.
    Sample {
        /// One of: ball-exit, halfplane-hit, walk-on-balls.
        sampler: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        x: Option<PointArg>,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        eps_shell: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Write a plot-ready curve as CSV.
    Report {
        /// One of: phi, one-minus-phi, poisson-H, phi-rel, hardy-schedule, fatou-decay.
        #[arg(long)]
        curve: String,
        #[command(flatten)]
        common: Common,
        /// Abscissa range start:end:count.
        #[arg(long = "r", alias = "range", allow_hyphen_values = true, value_parser = parse_range)]
        range: Option<RangeArg>,
        /// Space the abscissae logarithmically.
        #[arg(long)]
        log: bool,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        x: Option<PointArg>,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Caps the worker count from STABLEPOT_THREADS, if set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("STABLEPOT_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

enum Failure {
    Usage(String),
    Io(String),
    /// The reader went away, e.g. output piped into `head`.
    Closed,
}

impl From<stablepot_core::Error> for Failure {
    fn from(e: stablepot_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn params(c: &Common) -> Result<StableParams, Failure> {
    Ok(StableParams::new(c.d, c.alpha)?)
}

fn finite(x: Option<PointArg>, name: &str) -> Result<Option<Vec<f64>>, Failure> {
    x.map(|v| v.finite(name)).transpose().map_err(Failure::Usage)
}

fn open_out(path: &PathBuf) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn io<T>(r: std::io::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| if e.kind() == std::io::ErrorKind::BrokenPipe { Failure::Closed } else { Failure::Io(e.to_string()) })
}

/// Runs the command line `args` (program name first), writing to `out` and
/// `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_IO
        }
        Err(Failure::Closed) => EXIT_OK,
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Eval { kernel, common, x, y, z, a, r } => {
            let p = params(&common)?;
            let args = kernels::KernelArgs { x, y, z, a, r, m: common.m, lambda: common.lambda };
            let v = kernels::eval_kernel(&kernel, &p, &args)?;
            match common.format {
                Format::Plain => io(writeln!(out, "{v}"))?,
                Format::Json => io(writeln!(out, "{}", serde_json::json!({ "kernel": kernel, "d": p.d(), "alpha": p.alpha(), "value": report::num(v) })))?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite, common, tol, seed, out: path } => {
            let sp = suites::SuiteParams {
                d: common.d,
                alpha: common.alpha,
                m: common.m,
                lambda: common.lambda,
                seed: seed.unwrap_or(DEFAULT_SEED),
                tol_scale: tol,
            };
            if !suites::SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!("unknown suite {suite:?}; known: {}", suites::SUITES.join(", "))));
            }
            let rep = suites::run_suite(&suite, &sp)?;
            let json = rep.to_json();
            match path {
                Some(p) => {
                    let mut w = open_out(&p)?;
                    io(writeln!(w, "{json}"))?;
                    io(w.flush())?;
                    io(writeln!(out, "suite={} pass={} fail={} skip={}", rep.suite, rep.summary.pass, rep.summary.fail, rep.summary.skip))?;
                }
                None => io(writeln!(out, "{json}"))?,
            }
            Ok(if rep.ok() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Sample { sampler, common, x, n, seed, out: path, eps_shell, r_max, kappa, max_steps } => {
            let p = params(&common)?;
            let seed = seed.unwrap_or_else(|| {
                let _ = writeln!(err, "using default seed {DEFAULT_SEED}");
                DEFAULT_SEED
            });
            let def = WalkConfig::default();
            let cfg = WalkConfig {
                eps_shell: eps_shell.unwrap_or(def.eps_shell),
                r_max: r_max.unwrap_or(def.r_max),
                kappa: kappa.unwrap_or(def.kappa),
                max_steps: max_steps.unwrap_or(def.max_steps),
            };
            let run = sample::run_sampler(&sampler, &p, finite(x, "x")?, n, seed, cfg)?;
            match path {
                Some(pth) => {
                    let mut w = open_out(&pth)?;
                    io(run.sample.write_csv(&mut w))?;
                    io(w.flush())?;
                    io(writeln!(out, "{}", run.summary))?;
                }
                None => {
                    io(run.sample.write_csv(&mut *out))?;
                    io(writeln!(err, "{}", run.summary))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Report { curve, common, range, log, x, depth, beta, seed, out: path } => {
            let p = params(&common)?;
            let args = curves::CurveArgs { range, log, m: common.m, x: finite(x, "x")?, depth, beta, seed: seed.unwrap_or(DEFAULT_SEED) };
            let table = curves::curve(&curve, &p, &args)?;
            match path {
                Some(pth) => {
                    let mut w = open_out(&pth)?;
                    io(table.write_csv(&mut w))?;
                    io(w.flush())?;
                    io(writeln!(out, "curve={curve} rows={}", table.rows.len()))?;
                }
                None => io(table.write_csv(&mut *out))?,
            }
            Ok(EXIT_OK)
        }
    }
}
