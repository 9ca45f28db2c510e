//! Dual-distance certification.
//!
//! A dual codeword of weight w is exactly a linear dependency among w
//! columns of the generator matrix. [`dual_distance_at_least`] looks for
//! dependencies of weight < t ≤ 5 by hashing column pairs: two distinct
//! pair combinations with the same (projectively normalized) value give a
//! dependency of weight at most 4. [`dual_distance_exact`] is the
//! exhaustive oracle used to cross-check it on small instances.

use std::collections::HashMap;

use rayon::prelude::*;

use super::LinearCode;
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Largest dual-code size enumerated by [`dual_distance_exact`].
const MAX_DUAL_ENUMERATION: u64 = 1 << 22;
/// Largest number of column subsets tried per weight by the subset search.
const MAX_SUBSET_WORK: u128 = 1 << 32;
/// Largest k for the bitmap fast path (2^k bits).
const MAX_BITMAP_BITS: usize = 31;

/// A nonzero dual codeword given by its support and coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWitness {
    pub support: Vec<usize>,
    pub coeffs: Vec<u32>,
}

impl DualWitness {
    pub fn weight(&self) -> usize {
        self.support.len()
    }

    /// Dense form of the witness.
    pub fn to_vector(&self, n: usize) -> Vec<u32> {
        let mut v = vec![0u32; n];
        for (&j, &c) in self.support.iter().zip(&self.coeffs) {
            v[j] = c;
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualDistanceCertificate {
    pub threshold: usize,
    pub holds: bool,
    pub witness: Option<DualWitness>,
}

impl DualDistanceCertificate {
    /// Re-checks that a witness is a nonzero dual word of weight below the threshold.
    pub fn verify(&self, code: &LinearCode) -> bool {
        match (&self.holds, &self.witness) {
            (true, None) => true,
            (false, Some(w)) => {
                w.weight() > 0
                    && w.weight() < self.threshold
                    && w.coeffs.iter().all(|&c| c != 0)
                    && w.support.windows(2).all(|p| p[0] < p[1])
                    && code.is_dual_word(&w.to_vector(code.len()))
            }
            _ => false,
        }
    }
}

/// Scales a vector so its first nonzero coordinate is 1. Returns the
/// normalized vector and the scale s with v = s · normalized.
fn normalize(spec: &FieldSpec, v: &[u32]) -> Option<(Vec<u32>, u32)> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    if lead == 1 {
        return Some((v.to_vec(), 1));
    }
    let inv = spec.inv(lead).expect("nonzero");
    Some((v.iter().map(|&x| spec.mul(x, inv)).collect(), lead))
}

fn lex_min(a: Option<Vec<usize>>, b: Vec<usize>) -> Vec<usize> {
    match a {
        Some(a) if a <= b => a,
        _ => b,
    }
}

/// Solves Σ c_s · column_s = 0 for the given support, with the first
/// coefficient fixed to 1. The support must be a minimal dependency.
fn dependency_coeffs(code: &LinearCode, support: &[usize]) -> Vec<u32> {
    let spec = code.spec();
    let cols: Vec<Vec<u32>> = support.iter().map(|&j| code.column(j)).collect();
    if support.len() == 1 {
        return vec![1];
    }
    // Write −column_0 as a combination of the others: solve the k × (w−1) system.
    let w = support.len();
    let k = code.dimension();
    let mut aug: Vec<Vec<u32>> = (0..k)
        .map(|r| {
            let mut row: Vec<u32> = cols[1..].iter().map(|c| c[r]).collect();
            row.push(spec.neg(cols[0][r]));
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for c in 0..w - 1 {
        let Some(pr) = (rank..k).find(|&r| aug[r][c] != 0) else {
            continue;
        };
        aug.swap(rank, pr);
        let inv = spec.inv(aug[rank][c]).expect("nonzero");
        for x in aug[rank].iter_mut() {
            *x = spec.mul(*x, inv);
        }
        for r in 0..k {
            if r != rank && aug[r][c] != 0 {
                let f = aug[r][c];
                let pivot_row = aug[rank].clone();
                for (x, y) in aug[r].iter_mut().zip(pivot_row) {
                    *x = spec.sub(*x, spec.mul(f, y));
                }
            }
        }
        pivot_cols.push(c);
        rank += 1;
    }
    let mut coeffs = vec![0u32; w];
    coeffs[0] = 1;
    for (r, &c) in pivot_cols.iter().enumerate() {
        coeffs[c + 1] = aug[r][w - 1];
    }
    coeffs
}

fn witness(code: &LinearCode, support: Vec<usize>) -> DualWitness {
    let coeffs = dependency_coeffs(code, &support);
    DualWitness { support, coeffs }
}

/// Certifies that every set of fewer than `t` generator columns is
/// linearly independent, i.e. d^⊥ ≥ t. Supports t ≤ 5.
pub fn dual_distance_at_least(code: &LinearCode, t: usize) -> Result<DualDistanceCertificate> {
    dual_distance_at_least_with(code, t, false)
}

pub(crate) fn dual_distance_at_least_with(
    code: &LinearCode,
    t: usize,
    force_generic: bool,
) -> Result<DualDistanceCertificate> {
    if !(1..=5).contains(&t) {
        return Err(Error::UnsupportedThreshold(t));
    }
    let support = if code.spec().is_gf2() && code.dimension() <= 64 && !force_generic {
        BinarySearch::new(code).smallest_dependency(t)
    } else {
        GenericSearch::new(code).smallest_dependency(t)
    };
    let cert = match support {
        None => DualDistanceCertificate {
            threshold: t,
            holds: true,
            witness: None,
        },
        Some(support) => DualDistanceCertificate {
            threshold: t,
            holds: false,
            witness: Some(witness(code, support)),
        },
    };
    assert!(
        cert.verify(code),
        "emitted dual witness failed verification"
    );
    Ok(cert)
}

/// Columns packed into u64 words (q = 2, k ≤ 64).
struct BinarySearch {
    cols: Vec<u64>,
    k: usize,
}

impl BinarySearch {
    fn new(code: &LinearCode) -> Self {
        let gen = code.generator();
        let cols = (0..code.len())
            .map(|j| {
                gen.iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, row)| acc | ((row[j] as u64) << i))
            })
            .collect();
        BinarySearch {
            cols,
            k: code.dimension(),
        }
    }

    fn smallest_dependency(&self, t: usize) -> Option<Vec<usize>> {
        let n = self.cols.len();
        if t >= 2 {
            if let Some(j) = self.cols.iter().position(|&c| c == 0) {
                return Some(vec![j]);
            }
        }
        if t >= 3 {
            let mut first: HashMap<u64, usize> = HashMap::with_capacity(n);
            let mut best: Option<Vec<usize>> = None;
            for (j, &c) in self.cols.iter().enumerate() {
                match first.get(&c) {
                    Some(&i) => best = Some(lex_min(best, vec![i, j])),
                    None => {
                        first.insert(c, j);
                    }
                }
            }
            if best.is_some() {
                return best;
            }
        }
        if t >= 4 {
            // column values are distinct here
            let index: HashMap<u64, usize> =
                self.cols.iter().enumerate().map(|(j, &c)| (c, j)).collect();
            let found = (0..n).into_par_iter().find_first(|&a| {
                (a + 1..n).any(|b| {
                    index
                        .get(&(self.cols[a] ^ self.cols[b]))
                        .is_some_and(|&c| c > b)
                })
            });
            if let Some(a) = found {
                let (b, c) = (a + 1..n)
                    .filter_map(|b| {
                        index
                            .get(&(self.cols[a] ^ self.cols[b]))
                            .filter(|&&c| c > b)
                            .map(|&c| (b, c))
                    })
                    .min()
                    .expect("found above");
                return Some(vec![a, b, c]);
            }
        }
        if t >= 5 && self.has_pair_collision() {
            return Some(self.smallest_four_support());
        }
        None
    }

    /// Meet-in-the-middle: does any value c_a + c_b repeat over distinct pairs?
    fn has_pair_collision(&self) -> bool {
        let n = self.cols.len();
        if self.k <= MAX_BITMAP_BITS {
            let mut seen = vec![0u64; (1usize << self.k).div_ceil(64)];
            for a in 0..n {
                for b in a + 1..n {
                    let v = (self.cols[a] ^ self.cols[b]) as usize;
                    let (w, bit) = (v / 64, 1u64 << (v % 64));
                    if seen[w] & bit != 0 {
                        return true;
                    }
                    seen[w] |= bit;
                }
            }
            false
        } else {
            let mut seen = std::collections::HashSet::with_capacity(n * (n - 1) / 2);
            (0..n).any(|a| (a + 1..n).any(|b| !seen.insert(self.cols[a] ^ self.cols[b])))
        }
    }

    fn smallest_four_support(&self) -> Vec<usize> {
        let n = self.cols.len();
        let mut groups: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
        for a in 0..n {
            for b in a + 1..n {
                groups
                    .entry(self.cols[a] ^ self.cols[b])
                    .or_default()
                    .push((a, b));
            }
        }
        smallest_from_groups(groups.into_values())
    }
}

/// Lexicographically smallest {a, b, c, d} over groups of pairs sharing a
/// combination value. Pairs in each group are disjoint (no smaller
/// dependencies exist) and listed in lexicographic order.
fn smallest_from_groups(groups: impl Iterator<Item = Vec<(usize, usize)>>) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for pairs in groups {
        if pairs.len() < 2 {
            continue;
        }
        for &(a, b) in &pairs {
            let start = pairs.partition_point(|&(c, _)| c <= b);
            if let Some(&(c, d)) = pairs.get(start) {
                best = Some(lex_min(best, vec![a, b, c, d]));
                break;
            }
        }
    }
    best.expect("a collision was detected")
}

/// Works for any q, with projective normalization of column combinations.
struct GenericSearch<'a> {
    spec: &'a FieldSpec,
    cols: Vec<Vec<u32>>,
}

impl<'a> GenericSearch<'a> {
    fn new(code: &'a LinearCode) -> Self {
        GenericSearch {
            spec: code.spec(),
            cols: (0..code.len()).map(|j| code.column(j)).collect(),
        }
    }

    fn nonzero(&self) -> impl Iterator<Item = u32> + '_ {
        self.spec.elements().skip(1)
    }

    /// Normalized c_a + s·c_b.
    fn combo(&self, a: usize, s: u32, b: usize) -> Option<Vec<u32>> {
        let v: Vec<u32> = self.cols[a]
            .iter()
            .zip(&self.cols[b])
            .map(|(&x, &y)| self.spec.add(x, self.spec.mul(s, y)))
            .collect();
        normalize(self.spec, &v).map(|(v, _)| v)
    }

    fn smallest_dependency(&self, t: usize) -> Option<Vec<usize>> {
        let n = self.cols.len();
        if t >= 2 {
            if let Some(j) = self.cols.iter().position(|c| c.iter().all(|&x| x == 0)) {
                return Some(vec![j]);
            }
        }
        let normalized: Vec<Vec<u32>> = self
            .cols
            .iter()
            .map(|c| normalize(self.spec, c).expect("no zero columns").0)
            .collect();
        if t >= 3 {
            let mut first: HashMap<&[u32], usize> = HashMap::new();
            let mut best: Option<Vec<usize>> = None;
            for (j, c) in normalized.iter().enumerate() {
                match first.get(c.as_slice()) {
                    Some(&i) => best = Some(lex_min(best, vec![i, j])),
                    None => {
                        first.insert(c, j);
                    }
                }
            }
            if best.is_some() {
                return best;
            }
        }
        if t >= 4 {
            let index: HashMap<&[u32], usize> = normalized
                .iter()
                .enumerate()
                .map(|(j, c)| (c.as_slice(), j))
                .collect();
            for a in 0..n {
                let hit = (a + 1..n)
                    .flat_map(|b| self.nonzero().map(move |s| (b, s)))
                    .filter_map(|(b, s)| {
                        let v = self.combo(a, s, b)?;
                        index.get(v.as_slice()).filter(|&&c| c > b).map(|&c| (b, c))
                    })
                    .min();
                if let Some((b, c)) = hit {
                    return Some(vec![a, b, c]);
                }
            }
        }
        if t >= 5 {
            let mut groups: HashMap<Vec<u32>, Vec<(usize, usize)>> = HashMap::new();
            let mut collision = false;
            for a in 0..n {
                for b in a + 1..n {
                    for s in self.nonzero() {
                        let v = self.combo(a, s, b).expect("columns independent");
                        let entry = groups.entry(v).or_default();
                        collision |= !entry.is_empty();
                        entry.push((a, b));
                    }
                }
            }
            if collision {
                return Some(smallest_from_groups(groups.into_values()));
            }
        }
        None
    }
}

/// Exact dual distance: the minimum weight of a nonzero dual codeword.
///
/// Enumerates the whole dual code when it has at most 2^22 words;
/// otherwise searches column subsets of increasing size for the first
/// linear dependency. Codes with no nonzero dual word (k = n) report n + 1.
pub fn dual_distance_exact(code: &LinearCode) -> Result<usize> {
    let n = code.len();
    let k = code.dimension();
    if k == n {
        return Ok(n + 1);
    }
    let q = code.spec().order();
    let dual_size = q.checked_pow((n - k) as u32);
    match dual_size {
        Some(size) if size <= MAX_DUAL_ENUMERATION => Ok(enumerate_dual(code)),
        _ => subset_search(code),
    }
}

fn enumerate_dual(code: &LinearCode) -> usize {
    let spec = code.spec();
    let basis = code.dual_basis();
    let n = code.len();
    if spec.is_gf2() {
        let packed: Vec<Vec<u64>> = basis.iter().map(|h| super::pack_bits(h)).collect();
        let mut word = vec![0u64; n.div_ceil(64)];
        let mut best = usize::MAX;
        // Gray-code walk over all 2^(n−k) combinations
        for i in 1u64..(1u64 << basis.len()) {
            let flip = i.trailing_zeros() as usize;
            for (w, h) in word.iter_mut().zip(&packed[flip]) {
                *w ^= h;
            }
            let wt: usize = word.iter().map(|w| w.count_ones() as usize).sum();
            best = best.min(wt);
        }
        return best;
    }
    // odometer over coefficient digits; digit i contributes a_i · h_i
    let q = spec.order() as u32;
    let multiples: Vec<Vec<Vec<u32>>> = basis
        .iter()
        .map(|h| {
            (0..q)
                .map(|a| h.iter().map(|&x| spec.mul(a, x)).collect())
                .collect()
        })
        .collect();
    let mut digits = vec![0u32; basis.len()];
    let mut word = vec![0u32; n];
    let mut best = usize::MAX;
    loop {
        let mut i = 0;
        loop {
            if i == digits.len() {
                return best;
            }
            let old = digits[i];
            let new = (old + 1) % q;
            for ((w, &o), &nv) in word
                .iter_mut()
                .zip(&multiples[i][old as usize])
                .zip(&multiples[i][new as usize])
            {
                *w = spec.add(spec.sub(*w, o), nv);
            }
            digits[i] = new;
            if new != 0 {
                break;
            }
            i += 1;
        }
        best = best.min(word.iter().filter(|&&x| x != 0).count());
    }
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Finds the smallest w such that some w columns are dependent, by
/// enumerating (w−1)-subsets and looking up the remaining column.
fn subset_search(code: &LinearCode) -> Result<usize> {
    let spec = code.spec();
    let n = code.len();
    let q = spec.order();
    let cols: Vec<Vec<u32>> = (0..n).map(|j| code.column(j)).collect();
    if cols.iter().any(|c| c.iter().all(|&x| x == 0)) {
        return Ok(1);
    }
    // normalized column → indices
    let mut by_value: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for (j, c) in cols.iter().enumerate() {
        by_value
            .entry(normalize(spec, c).expect("nonzero").0)
            .or_default()
            .push(j);
    }
    if by_value.values().any(|v| v.len() > 1) {
        return Ok(2);
    }
    let index: HashMap<Vec<u32>, usize> = by_value.into_iter().map(|(k, v)| (k, v[0])).collect();
    for w in 3..=code.dimension() + 1 {
        let work = binomial(n, w - 1) * ((q - 1) as u128).pow(w as u32 - 2);
        if work > MAX_SUBSET_WORK {
            return Err(Error::TooLarge(format!(
                "exact dual distance of {}: {work} subsets at weight {w}",
                code.name()
            )));
        }
        let mut subset: Vec<usize> = Vec::with_capacity(w - 1);
        let mut coeffs: Vec<u32> = Vec::with_capacity(w - 1);
        if search_subsets(
            spec,
            &cols,
            &index,
            w - 1,
            0,
            &mut subset,
            &mut coeffs,
            &vec![0; code.dimension()],
        ) {
            return Ok(w);
        }
    }
    unreachable!("k + 1 columns are always dependent")
}

/// Depth-first over subsets of size `size` with coefficient 1 on the first
/// member and arbitrary nonzero coefficients on the rest; true if some
/// partial sum is proportional to a column with a larger index.
#[allow(clippy::too_many_arguments)]
fn search_subsets(
    spec: &FieldSpec,
    cols: &[Vec<u32>],
    index: &HashMap<Vec<u32>, usize>,
    size: usize,
    start: usize,
    subset: &mut Vec<usize>,
    coeffs: &mut Vec<u32>,
    sum: &[u32],
) -> bool {
    if subset.len() == size {
        let Some((key, _)) = normalize(spec, sum) else {
            return false;
        };
        let last = *subset.last().expect("size >= 1");
        return index.get(&key).is_some_and(|&j| j > last);
    }
    let n = cols.len();
    let remaining = size - subset.len();
    for j in start..=n - remaining {
        let scalars: Vec<u32> = if subset.is_empty() {
            vec![1]
        } else {
            spec.elements().skip(1).collect()
        };
        for s in scalars {
            let next: Vec<u32> = sum
                .iter()
                .zip(&cols[j])
                .map(|(&x, &y)| spec.add(x, spec.mul(s, y)))
                .collect();
            subset.push(j);
            coeffs.push(s);
            let found = search_subsets(spec, cols, index, size, j + 1, subset, coeffs, &next);
            subset.pop();
            coeffs.pop();
            if found {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::codes::{augment_all_ones, gold_code, reed_muller_1};

    fn gf2() -> Arc<FieldSpec> {
        Arc::new(FieldSpec::prime(2).unwrap())
    }

    fn repetition() -> LinearCode {
        LinearCode::from_generator(gf2(), vec![vec![1, 1, 1]], "rep").unwrap()
    }

    #[test]
    fn repetition_dual_words_by_hand() {
        // dual of the [3,1] repetition code = even-weight words of length 3
        let code = repetition();
        let dual: Vec<Vec<u32>> = (0..8u32)
            .map(|v| (0..3).map(|i| (v >> i) & 1).collect::<Vec<u32>>())
            .filter(|w| code.is_dual_word(w))
            .collect();
        assert_eq!(dual.len(), 4);
        let min = dual
            .iter()
            .map(|w| w.iter().sum::<u32>())
            .filter(|&wt| wt > 0)
            .min();
        assert_eq!(min, Some(2));
        assert_eq!(dual_distance_exact(&code).unwrap(), 2);

        let cert = dual_distance_at_least(&code, 3).unwrap();
        assert!(!cert.holds);
        let w = cert.witness.unwrap();
        assert_eq!(w.support, vec![0, 1]);
        assert_eq!(w.coeffs, vec![1, 1]);
        assert!(dual_distance_at_least(&code, 2).unwrap().holds);
    }

    #[test]
    fn hamming_7_4() {
        let rows = vec![
            vec![1, 0, 0, 0, 0, 1, 1],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 1, 1, 0],
            vec![0, 0, 0, 1, 1, 1, 1],
        ];
        let code = LinearCode::from_generator(gf2(), rows, "hamming").unwrap();
        assert_eq!(dual_distance_exact(&code).unwrap(), 4);
        assert!(dual_distance_at_least(&code, 4).unwrap().holds);
        let cert = dual_distance_at_least(&code, 5).unwrap();
        assert_eq!(cert.witness.unwrap().weight(), 4);
    }

    #[test]
    fn gold_31_is_certified() {
        let code = gold_code(5, 1).unwrap();
        let cert = dual_distance_at_least(&code, 5).unwrap();
        assert!(cert.holds && cert.witness.is_none());
        let generic = dual_distance_at_least_with(&code, 5, true).unwrap();
        assert!(generic.holds);
    }

    #[test]
    fn reed_muller_fails_with_weight_four_witness() {
        let code = reed_muller_1(4).unwrap();
        let cert = dual_distance_at_least(&code, 5).unwrap();
        assert!(!cert.holds);
        let w = cert.witness.clone().unwrap();
        assert_eq!(w.weight(), 4);
        // columns (1, t): t0 ^ t1 ^ t2 ^ t3 = 0 first happens for {0,1,2,3}
        assert_eq!(w.support, vec![0, 1, 2, 3]);
        assert_eq!(dual_distance_at_least_with(&code, 5, true).unwrap(), cert);
        assert_eq!(dual_distance_exact(&code).unwrap(), 4);
    }

    #[test]
    fn threshold_guard() {
        let code = repetition();
        assert!(matches!(
            dual_distance_at_least(&code, 6),
            Err(Error::UnsupportedThreshold(6))
        ));
        assert!(matches!(
            dual_distance_at_least(&code, 0),
            Err(Error::UnsupportedThreshold(0))
        ));
        assert!(dual_distance_at_least(&code, 1).unwrap().holds);
    }

    #[test]
    fn zero_column_is_weight_one() {
        let code = LinearCode::from_generator(gf2(), vec![vec![1, 0, 1]], "z").unwrap();
        let cert = dual_distance_at_least(&code, 2).unwrap();
        assert_eq!(cert.witness.unwrap().support, vec![1]);
        assert_eq!(dual_distance_exact(&code).unwrap(), 1);
    }

    #[test]
    fn full_code_has_no_dual_words() {
        let code = LinearCode::from_generator(gf2(), vec![vec![1, 0], vec![0, 1]], "full").unwrap();
        assert_eq!(dual_distance_exact(&code).unwrap(), 3);
        assert!(dual_distance_at_least(&code, 5).unwrap().holds);
    }

    #[test]
    fn augmented_gold_small_is_certified() {
        for m in [3, 5, 7] {
            let code = augment_all_ones(&gold_code(m, 1).unwrap()).unwrap();
            assert!(dual_distance_at_least(&code, 5).unwrap().holds, "m = {m}");
        }
    }

    #[test]
    fn ternary_codes_agree_with_enumeration() {
        use rand::{Rng, SeedableRng};
        let f3 = Arc::new(FieldSpec::prime(3).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 15 {
            let n = rng.gen_range(4..9);
            let k = rng.gen_range(1..n);
            let rows: Vec<Vec<u32>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(0..3)).collect())
                .collect();
            let Ok(code) = LinearCode::from_generator(Arc::clone(&f3), rows, "t") else {
                continue;
            };
            let exact = dual_distance_exact(&code).unwrap();
            for t in 2..=5 {
                let cert = dual_distance_at_least(&code, t).unwrap();
                assert_eq!(cert.holds, exact >= t, "n={n} k={k} t={t} exact={exact}");
            }
            checked += 1;
        }
    }

    #[test]
    fn gf4_code_uses_projective_normalization() {
        let f4 = Arc::new(FieldSpec::binary(2).unwrap());
        // column 1 = α · column 0
        let code =
            LinearCode::from_generator(f4, vec![vec![1, 2, 0], vec![1, 2, 1]], "gf4").unwrap();
        let cert = dual_distance_at_least(&code, 3).unwrap();
        let w = cert.witness.unwrap();
        assert_eq!(w.support, vec![0, 1]);
        assert_eq!(dual_distance_exact(&code).unwrap(), 2);
    }

    #[test]
    fn subset_search_matches_enumeration() {
        let code = gold_code(5, 1).unwrap();
        assert_eq!(subset_search(&code).unwrap(), 5);
        assert_eq!(enumerate_dual(&code), 5);
        let rm = reed_muller_1(3).unwrap();
        assert_eq!(subset_search(&rm).unwrap(), enumerate_dual(&rm));
    }
}
