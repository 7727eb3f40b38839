use std::io::{self, BufRead, Write};

use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use super::RngStream;
use crate::error::{Error, Result};

/// Draws per stream id.
pub const CHUNK: usize = 4096;

/// Runs `draw` n times, draw i using stream i / CHUNK. The result does not
/// depend on the number of worker threads.
pub fn draw_parallel<T, F>(seed: u64, n: usize, draw: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha20Rng) -> Result<T> + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let parts: Vec<Result<Vec<T>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = RngStream::new(seed, c as u64).rng();
            let len = CHUNK.min(n - c * CHUNK);
            (0..len).map(|_| draw(&mut rng)).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(n);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleMeta {
    pub sampler: String,
    pub d: usize,
    pub alpha: f64,
    pub seed: u64,
    pub n: usize,
    /// Further sampler arguments, e.g. the start point.
    pub extra: Vec<(String, String)>,
}

/// Draws (one row each) plus the metadata that reproduces them.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSample {
    pub meta: SampleMeta,
    pub columns: Vec<String>,
    pub draws: Vec<Vec<f64>>,
}

impl EmpiricalSample {
    pub fn new(meta: SampleMeta, columns: Vec<String>, draws: Vec<Vec<f64>>) -> Result<Self> {
        if meta.n != draws.len() {
            return Err(Error::Format(format!("meta says n = {} but {} draws given", meta.n, draws.len())));
        }
        if draws.iter().any(|r| r.len() != columns.len()) {
            return Err(Error::Format("row width differs from the column count".into()));
        }
        Ok(EmpiricalSample { meta, columns, draws })
    }

    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.draws.iter().map(|r| r[j]).collect()
    }

    /// CSV with '#' metadata lines, then a header row, then one draw per row.
    /// Values use the shortest round-trip representation.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let m = &self.meta;
        writeln!(w, "# sampler={}", m.sampler)?;
        writeln!(w, "# d={}", m.d)?;
        writeln!(w, "# alpha={}", m.alpha)?;
        writeln!(w, "# seed={}", m.seed)?;
        writeln!(w, "# n={}", m.n)?;
        for (k, v) in &m.extra {
            writeln!(w, "# {k}={v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        let mut line = String::new();
        for row in &self.draws {
            line.clear();
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    line.push(',');
                }
                line.push_str(&format!("{v:?}"));
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut meta = SampleMeta { sampler: String::new(), d: 0, alpha: f64::NAN, seed: 0, n: 0, extra: Vec::new() };
        let mut columns = None;
        let mut draws = Vec::new();
        let bad = |s: &str| Error::Format(format!("sample file line {s:?}"));
        for line in r.lines() {
            let line = line.map_err(|e| Error::Format(e.to_string()))?;
            if let Some(kv) = line.strip_prefix("# ") {
                let (k, v) = kv.split_once('=').ok_or_else(|| bad(&line))?;
                match k {
                    "sampler" => meta.sampler = v.to_string(),
                    "d" => meta.d = v.parse().map_err(|_| bad(&line))?,
                    "alpha" => meta.alpha = v.parse().map_err(|_| bad(&line))?,
                    "seed" => meta.seed = v.parse().map_err(|_| bad(&line))?,
                    "n" => meta.n = v.parse().map_err(|_| bad(&line))?,
                    _ => meta.extra.push((k.to_string(), v.to_string())),
                }
            } else if columns.is_none() {
                columns = Some(line.split(',').map(str::to_string).collect::<Vec<_>>());
            } else if !line.is_empty() {
                let row = line.split(',').map(|s| s.parse::<f64>().map_err(|_| bad(&line))).collect::<Result<Vec<_>>>()?;
                draws.push(row);
            }
        }
        Self::new(meta, columns.ok_or_else(|| bad("missing header"))?, draws)
    }
}
