use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::config::ExperimentConfig;
use crate::codes::{dual_distance_at_least, LinearCode};
use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::{centered_matrix, coherence_statistic, sample_codewords};
use crate::stats::{
    delta_estimate, ordered_mean, DiscrepancyReport, EmpiricalSpectralDistribution,
    REPORT_CSV_HEADER,
};

/// One trial: its report and eigenvalues.
#[derive(Clone, Debug)]
pub struct TrialResult {
    pub triple: usize,
    pub report: DiscrepancyReport,
    pub eigenvalues: Vec<f64>,
}

/// Across-trial Δ̂ at one z for one triple.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaSummary {
    pub n: usize,
    pub p: usize,
    pub z: Complex64,
    pub s_mean: Complex64,
    pub delta: Complex64,
}

#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    /// Sorted by (triple, trial).
    pub trials: Vec<TrialResult>,
    pub deltas: Vec<DeltaSummary>,
}

/// Trial identifier mixed into the seed: triple index in the high half.
pub fn trial_id(triple: usize, trial: usize) -> u64 {
    ((triple as u64) << 32) | trial as u64
}

fn run_trial(
    code: &LinearCode,
    cfg: &ExperimentConfig,
    z_grid: &[Complex64],
    triple: usize,
    p: usize,
    trial: usize,
) -> Result<TrialResult> {
    let start = Instant::now();
    let cw = sample_codewords(code, p, cfg.mode, cfg.seed, trial_id(triple, trial))?;
    let m = centered_matrix(&cw);
    let spectrum = hermitian_eigenvalues(&m.matrix)?;
    let coherence = coherence_statistic(&cw)?;
    let esd = EmpiricalSpectralDistribution::from_spectrum(&spectrum)?;
    let mut report = DiscrepancyReport::evaluate(
        &esd,
        z_grid,
        code,
        cfg.mode.as_str(),
        cfg.seed,
        trial as u64,
        coherence,
    )?;
    if cfg.record_timing {
        report.runtime_ms = start.elapsed().as_millis() as u64;
    }
    Ok(TrialResult {
        triple,
        report,
        eigenvalues: spectrum.values,
    })
}

/// Samples, diagonalizes and scores every (triple, trial). Codes must pass
/// the d^⊥ ≥ 5 certificate unless `allow_uncertified` is set.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let z_grid = cfg.z_points();
    let mut codes = Vec::with_capacity(cfg.triples.len());
    for &(size, _) in &cfg.triples {
        let code = cfg.build_code(size)?;
        let cert = dual_distance_at_least(&code, 5)?;
        if !cert.holds && !cfg.allow_uncertified {
            return Err(Error::Uncertified {
                code: code.name().to_string(),
                threshold: 5,
            });
        }
        codes.push(code);
    }
    let jobs: Vec<(usize, usize)> = (0..cfg.triples.len())
        .flat_map(|t| (0..cfg.trials).map(move |i| (t, i)))
        .collect();
    let trials = jobs
        .par_iter()
        .map(|&(t, i)| run_trial(&codes[t], cfg, &z_grid, t, cfg.triples[t].1, i))
        .collect::<Result<Vec<_>>>()?;

    let mut deltas = Vec::new();
    for (t, code) in codes.iter().enumerate() {
        let rows: Vec<&TrialResult> = trials.iter().filter(|r| r.triple == t).collect();
        for (zi, &z) in z_grid.iter().enumerate() {
            let values: Vec<Complex64> = rows.iter().map(|r| r.report.stieltjes[zi].1).collect();
            let s_mean = ordered_mean(&values);
            deltas.push(DeltaSummary {
                n: code.len(),
                p: cfg.triples[t].1,
                z,
                s_mean,
                delta: delta_estimate(s_mean, z)?,
            });
        }
    }
    Ok(ExperimentResult {
        config: cfg.clone(),
        trials,
        deltas,
    })
}

/// Column label for an evaluation point, e.g. `-2+0.5i`.
pub fn z_label(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

impl ExperimentResult {
    pub fn summary_header(&self) -> String {
        let mut h = String::from("code,n,k,p,mode,seed,trial,sup_interval,ks,coherence,runtime_ms");
        for z in self.config.z_points() {
            let _ = write!(h, ",s_residual[{}]", z_label(z));
        }
        for z in self.config.z_points() {
            let _ = write!(h, ",delta_abs[{}]", z_label(z));
        }
        h
    }

    /// summary.csv: one row per trial.
    pub fn summary_csv(&self) -> String {
        let mut out = self.summary_header();
        out.push('\n');
        for t in &self.trials {
            let r = &t.report;
            let _ = write!(
                out,
                "{},{},{},{},{},{},{},{:.12e},{:.12e},{:.12e},{}",
                r.code,
                r.n,
                r.k,
                r.p,
                r.mode,
                r.seed,
                r.trial,
                r.discrepancy.sup_interval,
                r.discrepancy.ks,
                r.coherence,
                r.runtime_ms
            );
            for (_, res) in &r.stieltjes_residuals {
                let _ = write!(out, ",{res:.12e}");
            }
            for (_, d) in &r.delta_estimates {
                let _ = write!(out, ",{:.12e}", d.norm());
            }
            out.push('\n');
        }
        out
    }

    /// reports.csv: one row per (trial, z).
    pub fn reports_csv(&self) -> String {
        let mut out = String::from(REPORT_CSV_HEADER);
        out.push('\n');
        for t in &self.trials {
            for row in t.report.csv_rows() {
                out.push_str(&row);
                out.push('\n');
            }
        }
        out
    }

    /// delta.csv: across-trial mean s and Δ̂ per (n, p, z).
    pub fn delta_csv(&self) -> String {
        let mut out =
            String::from("n,p,z_re,z_im,s_mean_re,s_mean_im,delta_re,delta_im,delta_abs\n");
        for d in &self.deltas {
            let _ = writeln!(
                out,
                "{},{},{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
                d.n,
                d.p,
                d.z.re,
                d.z.im,
                d.s_mean.re,
                d.s_mean.im,
                d.delta.re,
                d.delta.im,
                d.delta.norm()
            );
        }
        out
    }

    pub fn esd_file_name(t: &TrialResult) -> String {
        format!("esd_{}_{}_{}.csv", t.report.n, t.report.p, t.report.trial)
    }

    /// Writes summary.csv, reports.csv, delta.csv, config.json, the per-trial
    /// eigenvalue files and one CDF figure per triple into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let put = |name: &str, body: &str| {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|e| Error::io(path, e))
        };
        put("summary.csv", &self.summary_csv())?;
        put("reports.csv", &self.reports_csv())?;
        put("delta.csv", &self.delta_csv())?;
        put("config.json", &self.config.to_json())?;
        if self.config.write_esd {
            for t in &self.trials {
                put(&Self::esd_file_name(t), &esd_csv(&t.eigenvalues))?;
            }
        }
        for t in self.trials.iter().filter(|t| t.report.trial == 0) {
            let r = &t.report;
            let title = format!("{} (n = {}, p = {}), trial 0", r.code, r.n, r.p);
            put(
                &format!("fig_{}_{}.svg", r.n, r.p),
                &super::plot::cdf_svg(&t.eigenvalues, &title)?,
            )?;
        }
        Ok(())
    }

    /// Median sup-interval discrepancy per triple, in triple order.
    pub fn median_discrepancy(&self) -> Vec<f64> {
        (0..self.config.triples.len())
            .map(|t| {
                let v: Vec<f64> = self
                    .trials
                    .iter()
                    .filter(|r| r.triple == t)
                    .map(|r| r.report.discrepancy.sup_interval)
                    .collect();
                super::rate::quantile(&v, 0.5)
            })
            .collect()
    }
}

/// Eigenvalue file: header then one value per line.
pub fn esd_csv(values: &[f64]) -> String {
    let mut out = String::from("eigenvalue\n");
    for v in values {
        let _ = writeln!(out, "{v:e}");
    }
    out
}

pub fn read_esd_csv(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_esd_csv(&text)
}

pub fn parse_esd_csv(text: &str) -> Result<Vec<f64>> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    match lines.next() {
        Some("eigenvalue") => {}
        other => {
            return Err(Error::Parse(format!(
                "expected header \"eigenvalue\", found {other:?}"
            )))
        }
    }
    let values: Vec<f64> = lines
        .map(|l| {
            l.parse::<f64>()
                .map_err(|e| Error::Parse(format!("{l:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if values.is_empty() {
        return Err(Error::Domain("no eigenvalues in file".into()));
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig::from_json(
            r#"{"code_family": "gold", "triples": [[3, 2], [5, 4]], "trials": 3}"#,
        )
        .unwrap()
    }

    #[test]
    fn smallest_instance() {
        let cfg = ExperimentConfig::from_json(
            r#"{"code_family": "gold", "triples": [[3, 2]], "trials": 1}"#,
        )
        .unwrap();
        let start = Instant::now();
        let res = run_experiment(&cfg).unwrap();
        assert!(start.elapsed().as_secs_f64() < 1.0);
        assert_eq!(res.trials.len(), 1);
        assert_eq!(res.trials[0].eigenvalues.len(), 2);
        assert_eq!(res.summary_csv().lines().count(), 2);
    }

    #[test]
    fn outputs_have_expected_shape() {
        let res = run_experiment(&small()).unwrap();
        assert_eq!(res.trials.len(), 6);
        let summary = res.summary_csv();
        let header: Vec<&str> = summary.lines().next().unwrap().split(',').collect();
        assert_eq!(header.len(), 11 + 2 * 15);
        assert_eq!(header[7], "sup_interval");
        assert_eq!(header[11], "s_residual[-2+1i]");
        for line in summary.lines().skip(1) {
            assert_eq!(line.split(',').count(), header.len());
        }
        assert_eq!(res.reports_csv().lines().count(), 1 + 6 * 15);
        assert_eq!(res.deltas.len(), 2 * 15);
        let order: Vec<(usize, u64)> = res
            .trials
            .iter()
            .map(|t| (t.triple, t.report.trial))
            .collect();
        assert_eq!(order, vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]);
    }

    #[test]
    fn uncertified_code_aborts() {
        let cfg =
            ExperimentConfig::from_json(r#"{"code_family": "rm1", "triples": [[4, 4]]}"#).unwrap();
        match run_experiment(&cfg) {
            Err(Error::Uncertified { code, .. }) => assert_eq!(code, "rm1:m=4"),
            other => panic!("expected certification failure, got {other:?}"),
        }
        let mut cfg = cfg;
        cfg.allow_uncertified = true;
        assert!(run_experiment(&cfg).is_ok());
    }

    #[test]
    fn esd_csv_roundtrip() {
        let v = vec![-1.25, 0.0, 1e-17, 2.5];
        assert_eq!(parse_esd_csv(&esd_csv(&v)).unwrap(), v);
        assert!(parse_esd_csv("eigenvalue\n").is_err());
        assert!(parse_esd_csv("x\n1\n").is_err());
    }

    #[test]
    fn write_creates_files() {
        let dir = tempfile::tempdir().unwrap();
        let res = run_experiment(&small()).unwrap();
        res.write(dir.path()).unwrap();
        for name in [
            "summary.csv",
            "reports.csv",
            "delta.csv",
            "config.json",
            "esd_7_2_0.csv",
            "esd_31_4_2.csv",
            "fig_31_4.svg",
        ] {
            assert!(dir.path().join(name).exists(), "{name}");
        }
    }
}
