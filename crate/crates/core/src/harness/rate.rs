//! Log-log fit of the median discrepancy against n.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Linear-interpolation quantile of unsorted data (R type 7).
pub fn quantile(values: &[f64], q: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    match v.len() {
        0 => f64::NAN,
        1 => v[0],
        len => {
            let h = (len - 1) as f64 * q.clamp(0.0, 1.0);
            let lo = h.floor() as usize;
            let hi = h.ceil() as usize;
            v[lo] + (h - lo as f64) * (v[hi] - v[lo])
        }
    }
}

/// One summary row as needed by the fit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateSample {
    pub n: usize,
    pub p: usize,
    pub sup_interval: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LengthSummary {
    pub n: usize,
    pub p: usize,
    pub trials: usize,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
}

impl LengthSummary {
    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateFit {
    pub per_n: Vec<LengthSummary>,
    /// Least-squares fit log(median) = intercept + slope · log n.
    pub slope: f64,
    pub intercept: f64,
    /// β̂ = −slope.
    pub beta: f64,
    /// Fitted exponent of p ~ nᵞ.
    pub gamma: f64,
    /// min(γ̂/4, (1 − γ̂)/8).
    pub beta_benchmark: f64,
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Fits the decay exponent from per-trial discrepancies. Needs at least
/// three distinct n with ten trials each; each n must use a single p.
pub fn fit_rate(samples: &[RateSample]) -> Result<RateFit> {
    let mut groups: BTreeMap<usize, (usize, Vec<f64>)> = BTreeMap::new();
    for s in samples {
        let entry = groups.entry(s.n).or_insert((s.p, Vec::new()));
        if entry.0 != s.p {
            return Err(Error::InsufficientData(format!(
                "n = {} appears with p = {} and p = {}",
                s.n, entry.0, s.p
            )));
        }
        entry.1.push(s.sup_interval);
    }
    if groups.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "rate fit needs >= 3 distinct n, got {}",
            groups.len()
        )));
    }
    if let Some((n, (_, v))) = groups.iter().find(|(_, (_, v))| v.len() < 10) {
        return Err(Error::InsufficientData(format!(
            "n = {n} has {} trials, need >= 10",
            v.len()
        )));
    }
    let per_n: Vec<LengthSummary> = groups
        .iter()
        .map(|(&n, (p, v))| LengthSummary {
            n,
            p: *p,
            trials: v.len(),
            median: quantile(v, 0.5),
            q1: quantile(v, 0.25),
            q3: quantile(v, 0.75),
        })
        .collect();
    if let Some(s) = per_n.iter().find(|s| s.median.is_nan() || s.median <= 0.0) {
        return Err(Error::InsufficientData(format!(
            "median discrepancy at n = {} is not positive",
            s.n
        )));
    }
    let log_n: Vec<f64> = per_n.iter().map(|s| (s.n as f64).ln()).collect();
    let log_d: Vec<f64> = per_n.iter().map(|s| s.median.ln()).collect();
    let log_p: Vec<f64> = per_n.iter().map(|s| (s.p as f64).ln()).collect();
    let (slope, intercept) = least_squares(&log_n, &log_d);
    let (gamma, _) = least_squares(&log_n, &log_p);
    Ok(RateFit {
        per_n,
        slope,
        intercept,
        beta: -slope,
        gamma,
        beta_benchmark: (gamma / 4.0).min((1.0 - gamma) / 8.0),
    })
}

/// Reads the n, p and sup_interval columns of a summary.csv.
pub fn parse_summary(text: &str) -> Result<Vec<RateSample>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::Parse("empty summary file".into()))?
        .split(',')
        .collect();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Parse(format!("summary has no {name} column")))
    };
    let (cn, cp, cd) = (col("n")?, col("p")?, col("sup_interval")?);
    lines
        .enumerate()
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != header.len() {
                return Err(Error::Parse(format!(
                    "row {}: {} fields, header has {}",
                    i + 2,
                    fields.len(),
                    header.len()
                )));
            }
            let bad = |what: &str| Error::Parse(format!("row {}: bad {what}", i + 2));
            Ok(RateSample {
                n: fields[cn].trim().parse().map_err(|_| bad("n"))?,
                p: fields[cp].trim().parse().map_err(|_| bad("p"))?,
                sup_interval: fields[cd].trim().parse().map_err(|_| bad("sup_interval"))?,
            })
        })
        .collect()
}

pub fn read_summaries(paths: &[impl AsRef<Path>]) -> Result<Vec<RateSample>> {
    let mut out = Vec::new();
    for path in paths {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        out.extend(parse_summary(&text)?);
    }
    Ok(out)
}
