//! Empirical spectral statistics compared against the semicircle law.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::LinearCode;
use crate::eigen::Spectrum;
use crate::error::{Error, Result};
use crate::matrix::{root_of_unity_powers, CharacterMap};
use crate::semicircle::{sc_cdf, sc_stieltjes};

/// Uniform probability measure on a list of eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalSpectralDistribution {
    atoms: Vec<f64>,
}

impl EmpiricalSpectralDistribution {
    pub fn from_atoms(mut atoms: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Domain("empty spectrum".into()));
        }
        if atoms.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("non-finite eigenvalue".into()));
        }
        atoms.sort_by(f64::total_cmp);
        Ok(EmpiricalSpectralDistribution { atoms })
    }

    pub fn from_spectrum(s: &Spectrum) -> Result<Self> {
        Self::from_atoms(s.values.clone())
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// F(x) = #{λ ≤ x}/p.
    pub fn cdf(&self, x: f64) -> f64 {
        self.atoms.partition_point(|&a| a <= x) as f64 / self.len() as f64
    }

    /// F(x−) = #{λ < x}/p.
    pub fn cdf_left(&self, x: f64) -> f64 {
        self.atoms.partition_point(|&a| a < x) as f64 / self.len() as f64
    }
}

pub fn esd_from_spectrum(s: &Spectrum) -> Result<EmpiricalSpectralDistribution> {
    EmpiricalSpectralDistribution::from_spectrum(s)
}

/// Extremes of D(x) = F_emp(x) − F_SC(x) over the real line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    /// sup over intervals I of |μ(I) − ϱ(I)| = max D − min D.
    pub sup_interval: f64,
    /// max D (≥ 0).
    pub ks_onesided_max: f64,
    /// min D (≤ 0).
    pub ks_onesided_min: f64,
    /// Two-sided Kolmogorov–Smirnov distance sup |D|.
    pub ks: f64,
}

/// Exact sup-interval discrepancy. Since μ(a,b] − ϱ(a,b] = D(b) − D(a),
/// the supremum over intervals is max D − min D; D only jumps at atoms and
/// decreases between them, so its extremes are attained at atoms (value or
/// left limit) or at ±∞ where D = 0.
pub fn discrepancy(esd: &EmpiricalSpectralDistribution) -> Discrepancy {
    let p = esd.len() as f64;
    let atoms = esd.atoms();
    let mut hi = 0.0f64;
    let mut lo = 0.0f64;
    let mut below = 0usize;
    let mut i = 0;
    while i < atoms.len() {
        let v = atoms[i];
        let mut j = i;
        while j < atoms.len() && atoms[j] == v {
            j += 1;
        }
        let f = sc_cdf(v);
        let left = below as f64 / p - f;
        let value = j as f64 / p - f;
        hi = hi.max(left).max(value);
        lo = lo.min(left).min(value);
        below = j;
        i = j;
    }
    for x in [-2.0, 2.0] {
        let d = esd.cdf(x) - sc_cdf(x);
        hi = hi.max(d);
        lo = lo.min(d);
    }
    Discrepancy {
        sup_interval: hi - lo,
        ks_onesided_max: hi,
        ks_onesided_min: lo,
        ks: hi.max(-lo),
    }
}

pub fn interval_discrepancy(esd: &EmpiricalSpectralDistribution) -> f64 {
    discrepancy(esd).sup_interval
}

fn check_upper(z: Complex64) -> Result<()> {
    if z.im > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("need Im z > 0, got {z}")))
    }
}

/// s(z) = (1/p) Σ 1/(λ_j − z).
pub fn empirical_stieltjes(esd: &EmpiricalSpectralDistribution, z: Complex64) -> Result<Complex64> {
    check_upper(z)?;
    let sum: Complex64 = esd.atoms().iter().map(|&l| 1.0 / (l - z)).sum();
    Ok(sum / esd.len() as f64)
}

/// Δ̂ = 1/s + z + s, the defect in s = 1/(−z − s + Δ).
pub fn delta_estimate(s_mean: Complex64, z: Complex64) -> Result<Complex64> {
    if s_mean.norm() == 0.0 {
        return Err(Error::Domain("cannot invert s = 0".into()));
    }
    Ok(1.0 / s_mean + z + s_mean)
}

/// Mean of complex samples in index order.
pub fn ordered_mean(values: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for v in values {
        acc += v;
    }
    acc / values.len() as f64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub trials: usize,
    pub epsilon: f64,
    pub p: usize,
    pub eta: f64,
    pub mean_re: f64,
    pub mean_im: f64,
    /// Fraction of trials with |s − mean| ≥ ε.
    pub exceedance: f64,
    /// 2 exp(−p η² ε² / 8).
    pub bound: f64,
    /// Binomial standard deviation at min(bound, 1).
    pub sigma: f64,
    /// Exceedance above bound + 3σ.
    pub flagged: bool,
}

/// Compares the spread of per-trial Stieltjes values at one z against the
/// bound P(|s − E s| ≥ ε) ≤ 2 exp(−p η² ε² / 8).
pub fn concentration_probe(
    values: &[Complex64],
    epsilon: f64,
    p: usize,
    eta: f64,
) -> Result<ConcentrationReport> {
    if values.len() < 30 {
        return Err(Error::InsufficientData(format!(
            "concentration probe needs >= 30 trials, got {}",
            values.len()
        )));
    }
    let mean = ordered_mean(values);
    let hits = values
        .iter()
        .filter(|&&s| (s - mean).norm() >= epsilon)
        .count();
    let trials = values.len();
    let exceedance = hits as f64 / trials as f64;
    let bound = 2.0 * (-(p as f64) * eta * eta * epsilon * epsilon / 8.0).exp();
    let b = bound.min(1.0);
    let sigma = (b * (1.0 - b) / trials as f64).sqrt();
    Ok(ConcentrationReport {
        trials,
        epsilon,
        p,
        eta,
        mean_re: mean.re,
        mean_im: mean.im,
        exceedance,
        bound,
        sigma,
        flagged: exceedance > bound + 3.0 * sigma,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub codewords: u64,
    pub pairs_checked: usize,
    /// max over j ≠ k of |E ψ(c_j) conj ψ(c_k)|.
    pub max_pair_violation: f64,
    pub quadruples_checked: usize,
    /// max over sampled quadruples whose indices do not pair up.
    pub max_quadruple_violation: f64,
    /// Worst non-paired quadruple (j, t, k, s).
    pub witness: Option<[usize; 4]>,
    pub paired_checked: usize,
    /// max |E| over paired quadruples; at most 1.
    pub max_paired_moment: f64,
}

impl MomentReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_pair_violation < tol && self.max_quadruple_violation < tol
    }
}

const MOMENT_MAX_CODEWORDS: u64 = 1 << 12;
const MOMENT_MAX_LENGTH: usize = 512;
const MOMENT_QUADRUPLES: usize = 10_000;
const MOMENT_SEED: u64 = 0x4D4F_4D45_4E54;

/// Exact averages over all codewords of
/// ψ(c_j)·conj ψ(c_k) (j ≠ k) and ψ(c_j)ψ(c_t)·conj ψ(c_k)·conj ψ(c_s),
/// the latter on a fixed sample of index quadruples. Both vanish for
/// d^⊥ ≥ 5 unless e_j + e_t − e_k − e_s = 0.
#[allow(clippy::needless_range_loop)]
pub fn moment_oracle(code: &LinearCode) -> Result<MomentReport> {
    let size = code
        .size()
        .filter(|&s| s <= MOMENT_MAX_CODEWORDS)
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "moment oracle enumerates at most 2^12 codewords; {} is larger",
                code.name()
            ))
        })?;
    let n = code.len();
    if n > MOMENT_MAX_LENGTH {
        return Err(Error::TooLarge(format!(
            "code length {n} > {MOMENT_MAX_LENGTH}"
        )));
    }
    let cmap = CharacterMap::new(code.spec().clone());
    let p = code.spec().characteristic();
    let powers = root_of_unity_powers(p);
    // column-major exponents: cols[j][c] = Tr(codeword_c[j])
    let mut cols = vec![Vec::with_capacity(size as usize); n];
    for u in 0..size {
        let e = cmap.exponents(&code.codeword_by_index(u)?)?;
        for (col, x) in cols.iter_mut().zip(e) {
            col.push(x);
        }
    }
    let average = |terms: &[(usize, bool)]| -> f64 {
        let mut counts = vec![0u64; p as usize];
        for c in 0..size as usize {
            let mut e = 0u32;
            for &(j, conj) in terms {
                let x = cols[j][c];
                e = if conj { (e + p - x) % p } else { (e + x) % p };
            }
            counts[e as usize] += 1;
        }
        let sum: Complex64 = counts
            .iter()
            .zip(&powers)
            .map(|(&k, &z)| z * k as f64)
            .sum();
        sum.norm() / size as f64
    };

    let mut max_pair = 0.0f64;
    let mut pairs = 0;
    for j in 0..n {
        for k in 0..n {
            if j != k {
                max_pair = max_pair.max(average(&[(j, false), (k, true)]));
                pairs += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(MOMENT_SEED);
    let mut max_quad = 0.0f64;
    let mut witness = None;
    let mut quads = 0;
    let mut paired = 0;
    let mut max_paired = 0.0f64;
    let mut attempts = 0;
    while quads < MOMENT_QUADRUPLES && attempts < 10 * MOMENT_QUADRUPLES {
        attempts += 1;
        let idx = [
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        ];
        let [j, t, k, s] = idx;
        let value = average(&[(j, false), (t, false), (k, true), (s, true)]);
        if pairs_up(idx, p) {
            paired += 1;
            max_paired = max_paired.max(value);
        } else {
            quads += 1;
            if value > max_quad {
                max_quad = value;
                witness = Some(idx);
            }
        }
    }
    // every index quadruple of the form (j, t, j, t) pairs up
    for j in 0..n.min(16) {
        for t in 0..n.min(16) {
            paired += 1;
            max_paired = max_paired.max(average(&[(j, false), (t, false), (j, true), (t, true)]));
        }
    }
    Ok(MomentReport {
        codewords: size,
        pairs_checked: pairs,
        max_pair_violation: max_pair,
        quadruples_checked: quads,
        max_quadruple_violation: max_quad,
        witness: witness.filter(|_| max_quad >= 1e-10),
        paired_checked: paired,
        max_paired_moment: max_paired,
    })
}

/// True if e_j + e_t − e_k − e_s is the zero vector over GF(p).
fn pairs_up(idx: [usize; 4], p: u32) -> bool {
    let [j, t, k, s] = idx;
    let mut coeff: Vec<(usize, i64)> = Vec::with_capacity(4);
    for (i, sign) in [(j, 1i64), (t, 1), (k, -1), (s, -1)] {
        match coeff.iter_mut().find(|(x, _)| *x == i) {
            Some((_, c)) => *c += sign,
            None => coeff.push((i, sign)),
        }
    }
    coeff.iter().all(|&(_, c)| c.rem_euclid(p as i64) == 0)
}

/// Default evaluation points E + iη, E ∈ {−2,−1,0,1,2}, η ∈ {1, 0.5, 0.1}.
pub fn default_z_grid() -> Vec<Complex64> {
    let mut out = Vec::new();
    for eta in [1.0, 0.5, 0.1] {
        for e in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            out.push(Complex64::new(e, eta));
        }
    }
    out
}

/// Statistics of one trial.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscrepancyReport {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub mode: String,
    pub seed: u64,
    pub trial: u64,
    pub discrepancy: Discrepancy,
    pub coherence: f64,
    /// (z, s_emp(z)) on the evaluation grid.
    pub stieltjes: Vec<(Complex64, Complex64)>,
    /// (z, |s_emp(z) − s_SC(z)|).
    pub stieltjes_residuals: Vec<(Complex64, f64)>,
    /// (z, Δ̂(z)) from this trial's s_emp alone.
    pub delta_estimates: Vec<(Complex64, Complex64)>,
    pub runtime_ms: u64,
}

pub const REPORT_CSV_HEADER: &str =
    "code,n,k,p,mode,seed,trial,z_re,z_im,s_re,s_im,s_sc_residual,delta_re,delta_im,sup_interval,ks";

impl DiscrepancyReport {
    /// Evaluates Stieltjes residuals and Δ̂ on `z_grid`.
    #[allow(clippy::too_many_arguments)]
    pub fn evaluate(
        esd: &EmpiricalSpectralDistribution,
        z_grid: &[Complex64],
        code: &LinearCode,
        mode: &str,
        seed: u64,
        trial: u64,
        coherence: f64,
    ) -> Result<Self> {
        let mut stieltjes = Vec::with_capacity(z_grid.len());
        let mut residuals = Vec::with_capacity(z_grid.len());
        let mut deltas = Vec::with_capacity(z_grid.len());
        for &z in z_grid {
            let s = empirical_stieltjes(esd, z)?;
            stieltjes.push((z, s));
            residuals.push((z, (s - sc_stieltjes(z)?).norm()));
            deltas.push((z, delta_estimate(s, z)?));
        }
        Ok(DiscrepancyReport {
            code: code.name().to_string(),
            n: code.len(),
            k: code.dimension(),
            p: esd.len(),
            mode: mode.to_string(),
            seed,
            trial,
            discrepancy: discrepancy(esd),
            coherence,
            stieltjes,
            stieltjes_residuals: residuals,
            delta_estimates: deltas,
            runtime_ms: 0,
        })
    }

    /// One line per z, columns as in [`REPORT_CSV_HEADER`].
    pub fn csv_rows(&self) -> Vec<String> {
        self.stieltjes
            .iter()
            .zip(&self.stieltjes_residuals)
            .zip(&self.delta_estimates)
            .map(|(((z, s), (_, r)), (_, d))| {
                format!(
                    "{},{},{},{},{},{},{},{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
                    self.code,
                    self.n,
                    self.k,
                    self.p,
                    self.mode,
                    self.seed,
                    self.trial,
                    z.re,
                    z.im,
                    s.re,
                    s.im,
                    r,
                    d.re,
                    d.im,
                    self.discrepancy.sup_interval,
                    self.discrepancy.ks
                )
            })
            .collect()
    }
}
