//! Parsing of point and range arguments.

/// "0.5,-1,2" -> [0.5, -1, 2]; "inf" stands for the point at infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum PointArg {
    Finite(Vec<f64>),
    Infinity,
}

impl PointArg {
    pub fn finite(&self, what: &str) -> Result<Vec<f64>, String> {
        match self {
            PointArg::Finite(v) => Ok(v.clone()),
            PointArg::Infinity => Err(format!("{what} must be a finite point")),
        }
    }
}

pub fn parse_point(s: &str) -> Result<PointArg, String> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
        return Ok(PointArg::Infinity);
    }
    let v = t
        .split(',')
        .map(|c| c.trim().replace('\u{2212}', "-").parse::<f64>().map_err(|_| format!("bad coordinate {c:?} in {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if v.iter().any(|c| !c.is_finite()) {
        return Err(format!("coordinates must be finite in {s:?}"));
    }
    Ok(PointArg::Finite(v))
}

/// "a:b:n" -> n points from a to b inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeArg {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl RangeArg {
    pub fn points(&self, log: bool) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let t = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
                if log {
                    (self.start.ln() + t * (self.end.ln() - self.start.ln())).exp()
                } else {
                    self.start + t * (self.end - self.start)
                }
            })
            .collect()
    }
}

pub fn parse_range(s: &str) -> Result<RangeArg, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("range {s:?} must look like start:end:count"));
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let end: f64 = parts[1].trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    let count: usize = parts[2].trim().parse().map_err(|_| format!("bad range count in {s:?}"))?;
    if count == 0 || !(start < end) {
        return Err(format!("range {s:?} needs start < end and a positive count"));
    }
    Ok(RangeArg { start, end, count })
}
