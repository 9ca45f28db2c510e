//! Linear codes over GF(q) given by generator matrices.

mod dual;
mod families;

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

pub use dual::{dual_distance_at_least, dual_distance_exact, DualDistanceCertificate, DualWitness};
pub use families::{
    augment_all_ones, gold_code, gold_code_in, reed_muller_1, DEFAULT_GOLD_DECIMATION,
};

use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// An [n, k]_q linear code with a full-rank generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    spec: Arc<FieldSpec>,
    gen: Vec<Vec<u32>>,
    /// Row-reduced echelon form of `gen` and its pivot columns.
    rref: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    /// Bit-packed generator rows, for q = 2.
    packed: Option<Vec<Vec<u64>>>,
    n: usize,
    k: usize,
    name: String,
}

/// Gaussian elimination to reduced row echelon form. Returns the reduced
/// rows, the pivot column of each, and the index of the first input row
/// that reduced to zero (if any).
pub(crate) fn row_reduce(
    spec: &FieldSpec,
    rows: &[Vec<u32>],
) -> (Vec<Vec<u32>>, Vec<usize>, Option<usize>) {
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut dependent = None;
    for (r, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (b, &pc) in basis.iter().zip(&pivots) {
            let c = v[pc];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = spec.sub(*x, spec.mul(c, y));
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => {
                if dependent.is_none() {
                    dependent = Some(r);
                }
            }
            Some(pc) => {
                let inv = spec.inv(v[pc]).expect("pivot is nonzero");
                for x in v.iter_mut() {
                    *x = spec.mul(*x, inv);
                }
                for b in basis.iter_mut() {
                    let c = b[pc];
                    if c != 0 {
                        for (x, &y) in b.iter_mut().zip(&v) {
                            *x = spec.sub(*x, spec.mul(c, y));
                        }
                    }
                }
                basis.push(v);
                pivots.push(pc);
            }
        }
    }
    // order rows by pivot column
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let basis = order.iter().map(|&i| basis[i].clone()).collect();
    let pivots = order.iter().map(|&i| pivots[i]).collect();
    (basis, pivots, dependent)
}

pub(crate) fn pack_bits(row: &[u32]) -> Vec<u64> {
    let mut out = vec![0u64; row.len().div_ceil(64)];
    for (t, &b) in row.iter().enumerate() {
        if b != 0 {
            out[t / 64] |= 1 << (t % 64);
        }
    }
    out
}

impl LinearCode {
    /// Builds a code from generator rows, rejecting rank-deficient input.
    pub fn from_generator(
        spec: Arc<FieldSpec>,
        rows: Vec<Vec<u32>>,
        name: impl Into<String>,
    ) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::Parameter("generator matrix has no rows".into()));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::Parameter("generator matrix has no columns".into()));
        }
        if k > n {
            return Err(Error::Parameter(format!(
                "dimension {k} exceeds length {n}"
            )));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parameter(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x as u64 >= spec.order()) {
                return Err(Error::Parameter(format!(
                    "row {r} entry {bad} is not an element of GF({})",
                    spec.order()
                )));
            }
        }
        let (rref, pivots, dependent) = row_reduce(&spec, &rows);
        if let Some(row) = dependent {
            return Err(Error::RankDeficient { row });
        }
        let packed = spec
            .is_gf2()
            .then(|| rows.iter().map(|r| pack_bits(r)).collect());
        Ok(LinearCode {
            spec,
            gen: rows,
            rref,
            pivots,
            packed,
            n,
            k,
            name: name.into(),
        })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.gen
    }

    /// Number of codewords q^k, if it fits in a u64.
    pub fn size(&self) -> Option<u64> {
        self.spec.order().checked_pow(self.k as u32)
    }

    /// Column `j` of the generator matrix.
    pub fn column(&self, j: usize) -> Vec<u32> {
        self.gen.iter().map(|row| row[j]).collect()
    }

    /// A basis of the dual code, one vector per non-pivot column.
    pub fn dual_basis(&self) -> Vec<Vec<u32>> {
        let spec = &self.spec;
        let mut is_pivot = vec![false; self.n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut h = vec![0u32; self.n];
                h[f] = 1;
                for (row, &pc) in self.rref.iter().zip(&self.pivots) {
                    h[pc] = spec.neg(row[f]);
                }
                h
            })
            .collect()
    }

    /// True if `word` is orthogonal to every generator row.
    pub fn is_dual_word(&self, word: &[u32]) -> bool {
        self.gen.iter().all(|row| {
            row.iter().zip(word).fold(0u32, |acc, (&g, &w)| {
                self.spec.add(acc, self.spec.mul(g, w))
            }) == 0
        })
    }

    /// True if `word` lies in the row space of the generator.
    pub fn contains(&self, word: &[u32]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut rows = self.rref.clone();
        rows.push(word.to_vec());
        let (_, _, dependent) = row_reduce(&self.spec, &rows);
        dependent.is_some()
    }

    /// Message digits of index `u` in base q, least significant first.
    pub fn message(&self, u: u64) -> Result<Vec<u32>> {
        let size = self
            .size()
            .ok_or_else(|| Error::TooLarge(format!("q^k for {} exceeds 2^64", self.name)))?;
        if u >= size {
            return Err(Error::IndexOutOfRange { index: u, size });
        }
        let q = self.spec.order();
        let mut rest = u;
        Ok((0..self.k)
            .map(|_| {
                let d = (rest % q) as u32;
                rest /= q;
                d
            })
            .collect())
    }

    /// The codeword with index `u`: the base-q digits of `u` (least
    /// significant first) times the generator matrix.
    pub fn codeword_by_index(&self, u: u64) -> Result<Vec<u32>> {
        let msg = self.message(u)?;
        let spec = &self.spec;
        let mut word = vec![0u32; self.n];
        for (&d, row) in msg.iter().zip(&self.gen) {
            if d == 0 {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(row) {
                *w = spec.add(*w, spec.mul(d, g));
            }
        }
        Ok(word)
    }

    /// Bit-packed codeword for binary codes.
    pub fn codeword_bits(&self, u: u64) -> Result<Vec<u64>> {
        let packed = self
            .packed
            .as_ref()
            .ok_or_else(|| Error::Parameter("bit-packed codewords need q = 2".into()))?;
        let size = self
            .size()
            .ok_or_else(|| Error::TooLarge(format!("q^k for {} exceeds 2^64", self.name)))?;
        if u >= size {
            return Err(Error::IndexOutOfRange { index: u, size });
        }
        let mut word = vec![0u64; self.n.div_ceil(64)];
        for (i, row) in packed.iter().enumerate() {
            if (u >> i) & 1 == 1 {
                for (w, r) in word.iter_mut().zip(row) {
                    *w ^= r;
                }
            }
        }
        Ok(word)
    }

    /// n² / q^k, bounded above by a constant for codes with d^⊥ ≥ 5.
    pub fn sphere_packing_ratio(&self) -> f64 {
        let n = self.n as f64;
        n * n / (self.spec.order() as f64).powi(self.k as i32)
    }

    /// Writes the plain-text generator format: "q n k" then k rows.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.spec.order(), self.n, self.k);
        for row in &self.gen {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses the plain-text generator format. For q = p^m with m > 1 the
    /// entries are element encodings in the default polynomial basis.
    pub fn from_text(text: &str, name: impl Into<String>) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty generator file".into()))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|s| s.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("header {header:?}: {e}")))?;
        let [q, n, k] = nums[..] else {
            return Err(Error::Parse(format!("header {header:?} must be \"q n k\"")));
        };
        let spec = Arc::new(field_of_order(q)?);
        let mut rows = Vec::with_capacity(k as usize);
        for (r, line) in lines.enumerate() {
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|s| s.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("row {r}: {e}")))?;
            if row.len() as u64 != n {
                return Err(Error::Parse(format!(
                    "row {r} has {} entries, header says {n}",
                    row.len()
                )));
            }
            rows.push(row);
        }
        if rows.len() as u64 != k {
            return Err(Error::Parse(format!(
                "found {} rows, header says {k}",
                rows.len()
            )));
        }
        LinearCode::from_generator(spec, rows, name)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "file".into());
        Self::from_text(&text, name)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

/// Finds p, m with p^m = q and builds GF(q) with its default modulus.
pub fn field_of_order(q: u64) -> Result<FieldSpec> {
    if q < 2 {
        return Err(Error::InvalidField(format!("no field of order {q}")));
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut m = 0u32;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidField(format!("{q} is not a prime power")));
    }
    FieldSpec::with_default_modulus(p as u32, m)
}

/// A named construction: `gold:m=5`, `gold+1:m=5`, `rm1:m=4`, with an
/// optional decimation `k=` for Gold codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedCode {
    Gold { m: u32, decimation: u32 },
    AugmentedGold { m: u32, decimation: u32 },
    ReedMuller1 { m: u32 },
}

impl NamedCode {
    pub fn parse(text: &str) -> Result<Self> {
        let (family, params) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("{text:?}: expected family:m=<int>")))?;
        let mut m = None;
        let mut decimation = DEFAULT_GOLD_DECIMATION;
        for kv in params.split(',') {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("{kv:?}: expected key=value")))?;
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("{kv:?}: {e}")))?;
            match key.trim() {
                "m" => m = Some(value),
                "k" | "d" => decimation = value,
                other => return Err(Error::Parse(format!("unknown parameter {other:?}"))),
            }
        }
        let m = m.ok_or_else(|| Error::Parse(format!("{text:?}: missing m=")))?;
        Self::from_family(family.trim(), m, decimation)
    }

    pub fn from_family(family: &str, m: u32, decimation: u32) -> Result<Self> {
        match family {
            "gold" => Ok(NamedCode::Gold { m, decimation }),
            "gold+1" => Ok(NamedCode::AugmentedGold { m, decimation }),
            "rm1" => Ok(NamedCode::ReedMuller1 { m }),
            other => Err(Error::Parse(format!("unknown code family {other:?}"))),
        }
    }

    pub fn build(&self) -> Result<LinearCode> {
        self.build_with(None)
    }

    /// Builds the code, optionally over a field with an overridden modulus.
    pub fn build_with(&self, field: Option<Arc<FieldSpec>>) -> Result<LinearCode> {
        match *self {
            NamedCode::Gold { m, decimation } => match field {
                Some(f) => gold_code_in(f, decimation),
                None => gold_code(m, decimation),
            },
            NamedCode::AugmentedGold { m, decimation } => {
                let base = match field {
                    Some(f) => gold_code_in(f, decimation)?,
                    None => gold_code(m, decimation)?,
                };
                augment_all_ones(&base)
            }
            NamedCode::ReedMuller1 { m } => reed_muller_1(m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf2() -> Arc<FieldSpec> {
        Arc::new(FieldSpec::prime(2).unwrap())
    }

    #[test]
    fn generator_examples() {
        let rep = LinearCode::from_generator(gf2(), vec![vec![1, 1, 1]], "rep").unwrap();
        assert_eq!((rep.len(), rep.dimension()), (3, 1));

        let err = LinearCode::from_generator(gf2(), vec![vec![1, 0], vec![1, 0]], "bad");
        assert!(matches!(err, Err(Error::RankDeficient { row: 1 })));

        let full = LinearCode::from_generator(
            gf2(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            "full",
        )
        .unwrap();
        assert_eq!((full.len(), full.dimension()), (3, 3));
        assert!(full.dual_basis().is_empty());
    }

    #[test]
    fn rejects_bad_entries_and_shapes() {
        assert!(LinearCode::from_generator(gf2(), vec![], "x").is_err());
        assert!(LinearCode::from_generator(gf2(), vec![vec![2, 0]], "x").is_err());
        assert!(LinearCode::from_generator(gf2(), vec![vec![1, 0], vec![1]], "x").is_err());
    }

    #[test]
    fn codeword_index_examples() {
        let full = LinearCode::from_generator(
            gf2(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            "full",
        )
        .unwrap();
        assert_eq!(full.codeword_by_index(0).unwrap(), vec![0, 0, 0]);
        assert_eq!(full.codeword_by_index(5).unwrap(), vec![1, 0, 1]);
        assert!(matches!(
            full.codeword_by_index(8),
            Err(Error::IndexOutOfRange { index: 8, size: 8 })
        ));
        let rep = LinearCode::from_generator(gf2(), vec![vec![1, 1, 1]], "rep").unwrap();
        assert_eq!(rep.codeword_by_index(1).unwrap(), vec![1, 1, 1]);
        assert_eq!(full.sphere_packing_ratio(), 1.125);
    }

    #[test]
    fn codeword_index_nonbinary() {
        let f3 = Arc::new(FieldSpec::prime(3).unwrap());
        let code = LinearCode::from_generator(f3, vec![vec![1, 0, 1], vec![0, 1, 2]], "t").unwrap();
        // u = 5 = 2 + 1·3 → 2·(1,0,1) + 1·(0,1,2) = (2,1,1)
        assert_eq!(code.codeword_by_index(5).unwrap(), vec![2, 1, 1]);
        for h in code.dual_basis() {
            assert!(code.is_dual_word(&h));
        }
    }

    #[test]
    fn text_format_roundtrip() {
        let code = gold_code(5, 1).unwrap();
        let text = code.to_text();
        assert!(text.starts_with("2 31 10\n"));
        let back = LinearCode::from_text(&text, "gold").unwrap();
        assert_eq!(back.generator(), code.generator());
        assert!(LinearCode::from_text("2 3 1\n1 1", "x").is_err());
        assert!(LinearCode::from_text("6 3 1\n1 1 1", "x").is_err());
        assert!(LinearCode::from_text("2 3\n1 1 1", "x").is_err());
    }

    #[test]
    fn named_codes_parse() {
        assert_eq!(
            NamedCode::parse("gold:m=5").unwrap(),
            NamedCode::Gold {
                m: 5,
                decimation: 1
            }
        );
        assert_eq!(
            NamedCode::parse("gold+1:m=7,k=2").unwrap(),
            NamedCode::AugmentedGold {
                m: 7,
                decimation: 2
            }
        );
        assert_eq!(
            NamedCode::parse("rm1:m=4").unwrap(),
            NamedCode::ReedMuller1 { m: 4 }
        );
        assert!(NamedCode::parse("bch:m=4").is_err());
        assert!(NamedCode::parse("gold").is_err());
        let rm = NamedCode::parse("rm1:m=4").unwrap().build().unwrap();
        assert_eq!((rm.len(), rm.dimension()), (16, 5));
    }

    #[test]
    fn field_order_lookup() {
        assert_eq!(field_of_order(8).unwrap().degree(), 3);
        assert_eq!(field_of_order(9).unwrap().characteristic(), 3);
        assert_eq!(field_of_order(7).unwrap().degree(), 1);
        assert!(field_of_order(6).is_err());
    }

    proptest! {
        #[test]
        fn codeword_index_is_injective(seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(4..12);
            let k = rng.gen_range(1..=n.min(8));
            let rows: Vec<Vec<u32>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(0..2)).collect())
                .collect();
            if let Ok(code) = LinearCode::from_generator(gf2(), rows, "rand") {
                let words: std::collections::HashSet<Vec<u32>> = (0..code.size().unwrap())
                    .map(|u| code.codeword_by_index(u).unwrap())
                    .collect();
                prop_assert_eq!(words.len() as u64, code.size().unwrap());
                for u in 0..code.size().unwrap() {
                    prop_assert_eq!(
                        pack_bits(&code.codeword_by_index(u).unwrap()),
                        code.codeword_bits(u).unwrap()
                    );
                }
            }
        }
    }
}
