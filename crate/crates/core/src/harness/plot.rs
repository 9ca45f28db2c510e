//! SVG rendering of an empirical spectrum against the semicircle.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::semicircle::{sc_cdf, sc_pdf};
use crate::stats::{discrepancy, EmpiricalSpectralDistribution};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 50.0;
const CURVE_SAMPLES: usize = 400;

struct Frame {
    x0: f64,
    x1: f64,
    y1: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        MARGIN + (v - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - MARGIN - v / self.y1 * (HEIGHT - 2.0 * MARGIN)
    }
}

fn x_range(atoms: &[f64]) -> (f64, f64) {
    let lo = atoms.first().copied().unwrap_or(-2.0).min(-2.0);
    let hi = atoms.last().copied().unwrap_or(2.0).max(2.0);
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="30" text-anchor="middle" font-family="sans-serif" font-size="16">{title}</text>"#,
        WIDTH / 2.0
    );
}

fn axes(out: &mut String, f: &Frame, y_label: &str) {
    let (bx, by) = (MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r#"<g stroke="black" stroke-width="1"><line x1="{bx}" y1="{by}" x2="{}" y2="{by}"/><line x1="{bx}" y1="{by}" x2="{bx}" y2="{MARGIN}"/></g>"#,
        WIDTH - MARGIN
    );
    let mut tick = f.x0.ceil();
    while tick <= f.x1 {
        let x = f.x(tick);
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{tick}</text>"#,
            by + 16.0
        );
        tick += 1.0;
    }
    let _ = writeln!(
        out,
        r#"<text x="15" y="{}" font-family="sans-serif" font-size="12" transform="rotate(-90 15 {})">{y_label}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
}

fn polyline(out: &mut String, points: &[(f64, f64)], color: &str, id: &str) {
    let _ = write!(
        out,
        r#"<polyline id="{id}" fill="none" stroke="{color}" stroke-width="1.5" points=""#
    );
    for (i, (x, y)) in points.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x:.2},{y:.2}");
    }
    out.push_str("\"/>\n");
}

/// Location and size of the largest interval gap |μ_p(I) − μ_SC(I)|, found
/// from the extremes of D = F_p − F_SC over atoms, left limits and ±2.
pub fn sup_gap(esd: &EmpiricalSpectralDistribution) -> (f64, f64, f64) {
    let mut points: Vec<(f64, f64)> = vec![(-2.0, 0.0), (2.0, 0.0)];
    for &a in esd.atoms() {
        points.push((a, esd.cdf(a) - sc_cdf(a)));
        points.push((a, esd.cdf_left(a) - sc_cdf(a)));
    }
    for &x in &[-2.0, 2.0] {
        points.push((x, esd.cdf(x) - sc_cdf(x)));
        points.push((x, esd.cdf_left(x) - sc_cdf(x)));
    }
    let max = points
        .iter()
        .copied()
        .fold((0.0, f64::MIN), |b, p| if p.1 > b.1 { p } else { b });
    let min = points
        .iter()
        .copied()
        .fold((0.0, f64::MAX), |b, p| if p.1 < b.1 { p } else { b });
    let gap = discrepancy(esd).sup_interval;
    let (a, b) = if min.0 <= max.0 {
        (min.0, max.0)
    } else {
        (max.0, min.0)
    };
    (a, b, gap)
}

/// Step plot of the empirical CDF over the semicircle CDF, with the
/// largest interval gap marked.
pub fn cdf_svg(eigenvalues: &[f64], title: &str) -> Result<String> {
    if eigenvalues.is_empty() {
        return Err(Error::Domain("cannot plot an empty spectrum".into()));
    }
    let esd = EmpiricalSpectralDistribution::from_atoms(eigenvalues.to_vec())?;
    let atoms = esd.atoms();
    let (x0, x1) = x_range(atoms);
    let f = Frame { x0, x1, y1: 1.0 };
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, &f, "cumulative mass");

    let curve: Vec<(f64, f64)> = (0..CURVE_SAMPLES)
        .map(|i| {
            let x = x0 + (x1 - x0) * i as f64 / (CURVE_SAMPLES - 1) as f64;
            (f.x(x), f.y(sc_cdf(x)))
        })
        .collect();
    polyline(&mut out, &curve, "#d62728", "semicircle");

    let mut steps = vec![(f.x(x0), f.y(0.0))];
    for &a in atoms {
        steps.push((f.x(a), f.y(esd.cdf_left(a))));
        steps.push((f.x(a), f.y(esd.cdf(a))));
    }
    steps.push((f.x(x1), f.y(1.0)));
    steps.dedup();
    polyline(&mut out, &steps, "#1f77b4", "empirical");

    let (a, b, gap) = sup_gap(&esd);
    let _ = writeln!(
        out,
        r##"<rect id="sup-gap" data-sup-interval="{gap:.12e}" x="{:.2}" y="{MARGIN}" width="{:.2}" height="{}" fill="#ff7f0e" fill-opacity="0.15"/>"##,
        f.x(a),
        (f.x(b) - f.x(a)).max(1.0),
        HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">sup gap {gap:.4} on [{a:.3}, {b:.3}]</text>"#,
        MARGIN + 10.0,
        MARGIN + 15.0
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// Freedman–Diaconis bin width, falling back to Sturges when the IQR is 0.
fn bin_count(sorted: &[f64]) -> usize {
    let n = sorted.len();
    let span = sorted[n - 1] - sorted[0];
    if span <= 0.0 {
        return 1;
    }
    let iqr = super::rate::quantile(sorted, 0.75) - super::rate::quantile(sorted, 0.25);
    let bins = if iqr > 0.0 {
        let h = 2.0 * iqr / (n as f64).cbrt();
        (span / h).ceil()
    } else {
        (n as f64).log2().ceil() + 1.0
    };
    (bins as usize).clamp(1, 200)
}

/// Density histogram over the semicircle density.
pub fn density_svg(eigenvalues: &[f64], title: &str) -> Result<String> {
    if eigenvalues.is_empty() {
        return Err(Error::Domain("cannot plot an empty spectrum".into()));
    }
    let esd = EmpiricalSpectralDistribution::from_atoms(eigenvalues.to_vec())?;
    let atoms = esd.atoms();
    let bins = bin_count(atoms);
    let (lo, hi) = (atoms[0], atoms[atoms.len() - 1]);
    let width = if hi > lo {
        (hi - lo) / bins as f64
    } else {
        0.1
    };
    let mut counts = vec![0usize; bins];
    for &a in atoms {
        let i = (((a - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    let heights: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / (atoms.len() as f64 * width))
        .collect();
    let peak = heights
        .iter()
        .copied()
        .fold(1.0 / std::f64::consts::PI, f64::max);

    let (x0, x1) = x_range(atoms);
    let f = Frame {
        x0,
        x1,
        y1: peak * 1.1,
    };
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, &f, "density");
    out.push_str("<g id=\"histogram\" fill=\"#1f77b4\" fill-opacity=\"0.5\" stroke=\"#1f77b4\">\n");
    for (i, &h) in heights.iter().enumerate() {
        let left = lo + i as f64 * width;
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
            f.x(left),
            f.y(h),
            f.x(left + width) - f.x(left),
            f.y(0.0) - f.y(h)
        );
    }
    out.push_str("</g>\n");
    let curve: Vec<(f64, f64)> = (0..CURVE_SAMPLES)
        .map(|i| {
            let x = x0 + (x1 - x0) * i as f64 / (CURVE_SAMPLES - 1) as f64;
            (f.x(x), f.y(sc_pdf(x)))
        })
        .collect();
    polyline(&mut out, &curve, "#d62728", "semicircle");
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn attr<'a>(svg: &'a str, name: &str) -> &'a str {
        let start = svg.find(&format!("{name}=\"")).unwrap() + name.len() + 2;
        let end = svg[start..].find('"').unwrap();
        &svg[start..start + end]
    }

    #[test]
    fn cdf_plot_annotates_the_gap() {
        let eig = vec![-1.5, -0.2, 0.1, 0.1, 1.7];
        let svg = cdf_svg(&eig, "test").unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(r#"viewBox="0 0 800 500""#));
        let shown: f64 = attr(&svg, "data-sup-interval").parse().unwrap();
        let esd = EmpiricalSpectralDistribution::from_atoms(eig).unwrap();
        assert!((shown - discrepancy(&esd).sup_interval).abs() < 1e-12);
        let curve = attr(&svg[svg.find("id=\"semicircle\"").unwrap()..], "points");
        assert_eq!(curve.split(' ').count(), 400);
    }

    #[test]
    fn density_plot() {
        let eig: Vec<f64> = (0..50).map(|i| -1.9 + 3.8 * i as f64 / 49.0).collect();
        let svg = density_svg(&eig, "density").unwrap();
        assert!(svg.contains("id=\"histogram\""));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(density_svg(&[0.0, 0.0], "flat").is_ok());
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(cdf_svg(&[], "x").is_err());
        assert!(density_svg(&[], "x").is_err());
    }
}
