//! Character images of sampled codewords and the matrices built from them.
//!
//! Entries of Φ are powers ζ^e of a p-th root of unity and are kept as the
//! integer exponents e. Inner products of two rows then reduce to a
//! histogram of exponent differences, so the Gram matrix has an exact unit
//! diagonal and exact Hermitian symmetry.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::eigen::ComplexMatrix;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::seed::trial_rng;

/// The additive character ψ(a) = ζ^{Tr(a)} with ζ = exp(2πi/p).
#[derive(Clone, Debug)]
pub struct CharacterMap {
    spec: Arc<FieldSpec>,
    powers: Vec<Complex64>,
}

/// ζ^j for j in 0..p, with the real values for p = 2 written exactly.
pub fn root_of_unity_powers(p: u32) -> Vec<Complex64> {
    (0..p)
        .map(|j| match (p, j) {
            (_, 0) => Complex64::new(1.0, 0.0),
            (2, 1) => Complex64::new(-1.0, 0.0),
            _ => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / p as f64),
        })
        .collect()
}

impl CharacterMap {
    pub fn new(spec: Arc<FieldSpec>) -> Self {
        let powers = root_of_unity_powers(spec.characteristic());
        CharacterMap { spec, powers }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn zeta_power(&self, e: u32) -> Complex64 {
        self.powers[(e % self.spec.characteristic()) as usize]
    }

    /// ψ of a single encoded element.
    pub fn psi(&self, a: u32) -> Complex64 {
        self.powers[self.spec.trace(a) as usize]
    }

    /// Trace exponents of a word of encoded elements.
    pub fn exponents(&self, word: &[u32]) -> Result<Vec<u32>> {
        word.iter()
            .map(|&a| {
                if a as u64 >= self.spec.order() {
                    Err(Error::Domain(format!(
                        "{a} is not an element of GF({})",
                        self.spec.order()
                    )))
                } else {
                    Ok(self.spec.trace(a))
                }
            })
            .collect()
    }

    /// Componentwise ψ of a word of encoded elements.
    pub fn apply(&self, word: &[u32]) -> Result<Vec<Complex64>> {
        Ok(self
            .exponents(word)?
            .into_iter()
            .map(|e| self.powers[e as usize])
            .collect())
    }

    /// Componentwise ψ of field elements, checking they belong to this field.
    pub fn apply_elements(&self, word: &[FieldElement]) -> Result<Vec<Complex64>> {
        word.iter()
            .map(|a| {
                if a.spec().as_ref() != self.spec.as_ref() {
                    Err(Error::SpecMismatch {
                        left: self.spec.order(),
                        right: a.spec().order(),
                    })
                } else {
                    Ok(self.psi(a.value()))
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMode {
    /// p distinct codewords, uniformly.
    #[default]
    Distinct,
    /// p codewords drawn independently and uniformly.
    Iid,
}

impl SamplingMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SamplingMode::Distinct => "distinct",
            SamplingMode::Iid => "iid",
        }
    }
}

impl FromStr for SamplingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distinct" => Ok(SamplingMode::Distinct),
            "iid" => Ok(SamplingMode::Iid),
            other => Err(Error::Parse(format!("unknown sampling mode {other:?}"))),
        }
    }
}

/// The p × n matrix Φ of character values, stored as ζ-exponents.
#[derive(Clone, Debug)]
pub struct CodewordMatrix {
    rows: usize,
    n: usize,
    /// Characteristic of the field.
    char_p: u32,
    q: u64,
    exponents: Vec<u32>,
    /// Bit-packed rows when the characteristic is 2.
    bits: Option<Vec<Vec<u64>>>,
    powers: Vec<Complex64>,
    pub indices: Vec<u64>,
    pub mode: SamplingMode,
    pub seed: u64,
    pub trial_id: u64,
}

impl CodewordMatrix {
    /// Builds Φ from explicit ζ-exponent rows.
    pub fn from_exponents(char_p: u32, q: u64, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || n == 0 {
            return Err(Error::Domain(
                "codeword matrix needs rows and columns".into(),
            ));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("rows of unequal length".into()));
        }
        if rows.iter().flatten().any(|&e| e >= char_p) {
            return Err(Error::Domain(format!(
                "exponent out of range for p = {char_p}"
            )));
        }
        let bits = (char_p == 2).then(|| rows.iter().map(|r| crate::codes::pack_bits(r)).collect());
        Ok(CodewordMatrix {
            rows: rows.len(),
            n,
            char_p,
            q,
            exponents: rows.concat(),
            bits,
            powers: root_of_unity_powers(char_p),
            indices: Vec::new(),
            mode: SamplingMode::Distinct,
            seed: 0,
            trial_id: 0,
        })
    }

    /// Number of sampled rows (the matrix dimension p).
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Code length n.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn characteristic(&self) -> u32 {
        self.char_p
    }

    pub fn row_exponents(&self, j: usize) -> &[u32] {
        &self.exponents[j * self.n..(j + 1) * self.n]
    }

    pub fn entry(&self, j: usize, t: usize) -> Complex64 {
        self.powers[self.exponents[j * self.n + t] as usize]
    }

    /// Φ as complex rows.
    pub fn phi(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows)
            .map(|j| (0..self.n).map(|t| self.entry(j, t)).collect())
            .collect()
    }

    /// ⟨v_j, v_k⟩ = Σ_t v_jt conj(v_kt), from a histogram of exponent differences.
    pub fn inner_product(&self, j: usize, k: usize) -> Complex64 {
        if let Some(bits) = &self.bits {
            let diff: u32 = bits[j]
                .iter()
                .zip(&bits[k])
                .map(|(a, b)| (a ^ b).count_ones())
                .sum();
            return Complex64::new(self.n as f64 - 2.0 * diff as f64, 0.0);
        }
        let p = self.char_p;
        let mut counts = vec![0u64; p as usize];
        for (&a, &b) in self.row_exponents(j).iter().zip(self.row_exponents(k)) {
            counts[((a + p - b) % p) as usize] += 1;
        }
        counts
            .iter()
            .zip(&self.powers)
            .map(|(&c, &z)| z * c as f64)
            .sum()
    }

    /// Dump format: header "p n q seed mode", then one line of n exponents per row.
    pub fn to_dump(&self) -> String {
        let mut out = format!(
            "{} {} {} {} {}\n",
            self.rows,
            self.n,
            self.q,
            self.seed,
            self.mode.as_str()
        );
        for j in 0..self.rows {
            let line: Vec<String> = self.row_exponents(j).iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| Error::Parse("empty dump".into()))?
            .split_whitespace()
            .collect();
        let [rows, n, q, seed, mode] = header[..] else {
            return Err(Error::Parse(
                "dump header must be \"p n q seed mode\"".into(),
            ));
        };
        let parse = |s: &str| {
            s.parse::<u64>()
                .map_err(|e| Error::Parse(format!("dump header field {s:?}: {e}")))
        };
        let (rows, n, q, seed) = (parse(rows)?, parse(n)?, parse(q)?, parse(seed)?);
        let char_p = crate::codes::field_of_order(q)?.characteristic();
        let data: Vec<Vec<u32>> = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|s| s.parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                    .collect()
            })
            .collect::<Result<_>>()?;
        if data.len() as u64 != rows || data.iter().any(|r| r.len() as u64 != n) {
            return Err(Error::Parse("dump body does not match its header".into()));
        }
        let mut cw = CodewordMatrix::from_exponents(char_p, q, data)?;
        cw.seed = seed;
        cw.mode = mode.parse()?;
        Ok(cw)
    }

    pub fn write_dump(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_dump()).map_err(|e| Error::io(path, e))
    }
}

/// Draws `rows` codeword indices and maps the codewords through ψ.
/// (seed, trial_id) determines the indices.
pub fn sample_codewords(
    code: &LinearCode,
    rows: usize,
    mode: SamplingMode,
    seed: u64,
    trial_id: u64,
) -> Result<CodewordMatrix> {
    let size = code
        .size()
        .ok_or_else(|| Error::TooLarge(format!("{} has more than 2^64 codewords", code.name())))?;
    if rows == 0 {
        return Err(Error::Domain("need at least one row".into()));
    }
    if mode == SamplingMode::Distinct && rows as u64 > size {
        return Err(Error::Capacity {
            requested: rows,
            available: size,
        });
    }
    let mut rng = trial_rng(seed, trial_id);
    let mut indices = Vec::with_capacity(rows);
    let mut seen = HashSet::with_capacity(rows);
    while indices.len() < rows {
        let u = rng.gen_range(0..size);
        if mode == SamplingMode::Iid || seen.insert(u) {
            indices.push(u);
        }
    }

    let spec = code.spec();
    let cmap = CharacterMap::new(Arc::clone(spec));
    let n = code.len();
    let mut cw = if spec.is_gf2() {
        // for q = 2 the trace is the identity, so exponents are the codeword bits
        let mut exponents = Vec::with_capacity(rows * n);
        let mut bits = Vec::with_capacity(rows);
        for &u in &indices {
            let word = code.codeword_bits(u)?;
            exponents.extend((0..n).map(|t| ((word[t / 64] >> (t % 64)) & 1) as u32));
            bits.push(word);
        }
        CodewordMatrix {
            rows,
            n,
            char_p: 2,
            q: 2,
            exponents,
            bits: Some(bits),
            powers: root_of_unity_powers(2),
            indices: Vec::new(),
            mode,
            seed,
            trial_id,
        }
    } else {
        let data = indices
            .iter()
            .map(|&u| cmap.exponents(&code.codeword_by_index(u)?))
            .collect::<Result<Vec<_>>>()?;
        CodewordMatrix::from_exponents(spec.characteristic(), spec.order(), data)?
    };
    cw.indices = indices;
    cw.mode = mode;
    cw.seed = seed;
    cw.trial_id = trial_id;
    Ok(cw)
}

/// 𝒢 = (1/n) Φ Φ*, with unit diagonal and conjugate-symmetric off-diagonal.
pub fn gram_matrix(cw: &CodewordMatrix) -> ComplexMatrix {
    let p = cw.rows();
    let n = cw.len() as f64;
    let mut g = ComplexMatrix::identity(p);
    for j in 0..p {
        for k in j + 1..p {
            let v = cw.inner_product(j, k) / n;
            g[(j, k)] = v;
            g[(k, j)] = v.conj();
        }
    }
    g
}

/// M = √(n/p)(𝒢 − I), Hermitian with an exactly zero diagonal.
#[derive(Clone, Debug)]
pub struct CenteredMatrix {
    pub matrix: ComplexMatrix,
    pub p: usize,
    pub n: usize,
}

pub fn centered_matrix(cw: &CodewordMatrix) -> CenteredMatrix {
    let p = cw.rows();
    let n = cw.len();
    let scale = (n as f64 / p as f64).sqrt();
    let mut m = gram_matrix(cw);
    for j in 0..p {
        for k in 0..p {
            m[(j, k)] = if j == k {
                Complex64::new(0.0, 0.0)
            } else {
                m[(j, k)] * scale
            };
        }
    }
    CenteredMatrix { matrix: m, p, n }
}

/// max over row pairs of |⟨v, v′⟩| / √n.
pub fn coherence_statistic(cw: &CodewordMatrix) -> Result<f64> {
    let p = cw.rows();
    if p < 2 {
        return Err(Error::Domain("coherence needs at least two rows".into()));
    }
    let mut best = 0.0f64;
    for j in 0..p {
        for k in j + 1..p {
            best = best.max(cw.inner_product(j, k).norm());
        }
    }
    Ok(best / (cw.len() as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{augment_all_ones, gold_code};

    fn binary(rows: Vec<Vec<u32>>) -> CodewordMatrix {
        CodewordMatrix::from_exponents(2, 2, rows).unwrap()
    }

    #[test]
    fn psi_binary() {
        let cmap = CharacterMap::new(Arc::new(FieldSpec::prime(2).unwrap()));
        let v = cmap.apply(&[0, 1, 1]).unwrap();
        assert_eq!(
            v,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(-1.0, 0.0)
            ]
        );
        assert!(cmap.apply(&[2]).is_err());
    }

    #[test]
    fn psi_gf4_trace_zero_elements() {
        let f4 = Arc::new(FieldSpec::binary(2).unwrap());
        // trace-zero elements of GF(4): 0 and 1 (Tr(1) = 1 + 1 = 0)
        let trace_zero: Vec<u32> = f4
            .elements()
            .filter(|&a| f4.frobenius_trace(a) == 0)
            .collect();
        assert_eq!(trace_zero, vec![0, 1]);
        let cmap = CharacterMap::new(Arc::clone(&f4));
        let v = cmap.apply(&[0, 1, 1, 0]).unwrap();
        assert!(v.iter().all(|&z| z == Complex64::new(1.0, 0.0)));
        assert!(cmap
            .apply(&[0; 5])
            .unwrap()
            .iter()
            .all(|&z| z == Complex64::new(1.0, 0.0)));

        let f8 = Arc::new(FieldSpec::binary(3).unwrap());
        assert!(matches!(
            cmap.apply_elements(&[f8.one()]),
            Err(Error::SpecMismatch { .. })
        ));
    }

    #[test]
    fn character_orthogonality_exhaustive() {
        for (p, m) in [(2, 1), (2, 4), (3, 2), (5, 1), (2, 6), (7, 2)] {
            let f = Arc::new(FieldSpec::with_default_modulus(p, m).unwrap());
            let cmap = CharacterMap::new(Arc::clone(&f));
            let q = f.order() as f64;
            for a in f.elements() {
                let s: Complex64 = f
                    .elements()
                    .map(|x| cmap.psi(f.mul(a, x)))
                    .sum::<Complex64>()
                    / q;
                let expect = if a == 0 { 1.0 } else { 0.0 };
                assert!((s - expect).norm() < 1e-12, "GF({p}^{m}) a={a}");
                assert!((cmap.psi(a).norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn gram_examples() {
        let one = binary(vec![vec![0, 1, 1]]);
        assert_eq!(gram_matrix(&one), ComplexMatrix::identity(1));
        assert_eq!(centered_matrix(&one).matrix, ComplexMatrix::zeros(1));

        let twins = binary(vec![vec![0, 1, 1], vec![0, 1, 1]]);
        let g = gram_matrix(&twins);
        assert!((0..2).all(|i| (0..2).all(|j| g[(i, j)] == Complex64::new(1.0, 0.0))));
        assert!((coherence_statistic(&twins).unwrap() - 3f64.sqrt()).abs() < 1e-15);

        let orth = binary(vec![vec![0, 0, 0, 0], vec![0, 1, 0, 1]]);
        assert_eq!(centered_matrix(&orth).matrix, ComplexMatrix::zeros(2));
        assert_eq!(coherence_statistic(&orth).unwrap(), 0.0);
        assert!(coherence_statistic(&one).is_err());
    }

    #[test]
    fn gram_matches_naive_inner_product() {
        // ternary rows to exercise the histogram path
        let rows = vec![
            vec![0, 1, 2, 2, 1],
            vec![2, 2, 0, 1, 0],
            vec![1, 1, 1, 0, 2],
        ];
        let cw = CodewordMatrix::from_exponents(3, 3, rows).unwrap();
        let phi = cw.phi();
        let g = gram_matrix(&cw);
        for j in 0..3 {
            for k in 0..3 {
                let naive: Complex64 = phi[j]
                    .iter()
                    .zip(&phi[k])
                    .map(|(a, b)| a * b.conj())
                    .sum::<Complex64>()
                    / 5.0;
                assert!((g[(j, k)] - naive).norm() < 1e-14);
            }
        }
        assert!(g.hermitian_violation(0.0).is_none());
    }

    #[test]
    fn centered_two_rows() {
        // ⟨v, v′⟩ = c·n with c = 1/2 for n = 8
        let cw = binary(vec![vec![0; 8], vec![1, 0, 0, 0, 0, 0, 0, 1]]);
        let m = centered_matrix(&cw).matrix;
        let c = 0.5;
        let expect = (8.0f64 / 2.0).sqrt() * c;
        assert!((m[(0, 1)].re - expect).abs() < 1e-15);
        assert_eq!(m[(0, 0)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn sampling_is_deterministic_and_distinct() {
        let code = gold_code(5, 1).unwrap();
        let a = sample_codewords(&code, 8, SamplingMode::Distinct, 9, 3).unwrap();
        let b = sample_codewords(&code, 8, SamplingMode::Distinct, 9, 3).unwrap();
        assert_eq!(a.indices, b.indices);
        let set: HashSet<u64> = a.indices.iter().copied().collect();
        assert_eq!(set.len(), 8);
        assert!(a.indices.iter().all(|&u| u < 1024));
        let c = sample_codewords(&code, 8, SamplingMode::Distinct, 9, 4).unwrap();
        assert_ne!(a.indices, c.indices);
        // rows agree with the generic codeword path
        for (j, &u) in a.indices.iter().enumerate() {
            assert_eq!(
                a.row_exponents(j),
                code.codeword_by_index(u).unwrap().as_slice()
            );
        }
    }

    #[test]
    fn exhaustive_distinct_sampling() {
        let code = gold_code(3, 1).unwrap();
        let cw = sample_codewords(&code, 64, SamplingMode::Distinct, 1, 0).unwrap();
        let mut idx = cw.indices.clone();
        idx.sort_unstable();
        assert_eq!(idx, (0..64).collect::<Vec<u64>>());
        assert!(matches!(
            sample_codewords(&code, 65, SamplingMode::Distinct, 1, 0),
            Err(Error::Capacity {
                requested: 65,
                available: 64
            })
        ));
        assert!(sample_codewords(&code, 65, SamplingMode::Iid, 1, 0).is_ok());
    }

    #[test]
    fn sampled_matrices_have_exact_structure() {
        let code = augment_all_ones(&gold_code(7, 1).unwrap()).unwrap();
        let cw = sample_codewords(&code, 20, SamplingMode::Distinct, 11, 0).unwrap();
        let g = gram_matrix(&cw);
        let m = centered_matrix(&cw).matrix;
        for j in 0..20 {
            assert_eq!(g[(j, j)], Complex64::new(1.0, 0.0));
            assert_eq!(m[(j, j)], Complex64::new(0.0, 0.0));
        }
        assert!(m.hermitian_violation(0.0).is_none());
    }

    #[test]
    fn all_ones_row_raises_coherence() {
        // the all-ones codeword maps to (−1,…,−1), whose inner product with
        // the zero word's image is −n
        let gold = gold_code(5, 1).unwrap();
        let aug = augment_all_ones(&gold).unwrap();
        let balanced = gold.codeword_by_index(1).unwrap();
        let ones = aug.codeword_by_index(1 << 10).unwrap();
        assert!(ones.iter().all(|&x| x == 1));
        let with_ones = binary(vec![balanced.clone(), ones, vec![0; 31]]);
        let gold_only = binary(vec![
            balanced,
            gold.codeword_by_index(2).unwrap(),
            gold.codeword_by_index(3).unwrap(),
        ]);
        let a = coherence_statistic(&with_ones).unwrap();
        let b = coherence_statistic(&gold_only).unwrap();
        assert!((a - 31f64.sqrt()).abs() < 1e-12);
        assert!(a > b, "{a} vs {b}");
    }

    #[test]
    fn dump_roundtrip() {
        let code = gold_code(3, 1).unwrap();
        let cw = sample_codewords(&code, 4, SamplingMode::Iid, 77, 0).unwrap();
        let text = cw.to_dump();
        assert!(text.starts_with("4 7 2 77 iid\n"));
        let back = CodewordMatrix::from_dump(&text).unwrap();
        assert_eq!(gram_matrix(&back), gram_matrix(&cw));
        assert!(CodewordMatrix::from_dump("2 3 2 0 distinct\n0 1 1").is_err());
    }
}
