use std::sync::Arc;

use super::LinearCode;
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Decimation exponent k for Gold codes; d = 2^k + 1 = 3.
pub const DEFAULT_GOLD_DECIMATION: u32 = 1;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Binary Gold code of length 2^m − 1 and dimension 2m over the default field.
pub fn gold_code(m: u32, decimation: u32) -> Result<LinearCode> {
    check_gold_params(m, decimation)?;
    gold_code_in(Arc::new(FieldSpec::binary(m)?), decimation)
}

fn check_gold_params(m: u32, decimation: u32) -> Result<()> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "Gold codes need odd m >= 3, got m = {m}"
        )));
    }
    if decimation == 0 || gcd(decimation, m) != 1 {
        return Err(Error::Parameter(format!(
            "decimation k = {decimation} must satisfy gcd(k, m) = 1 for m = {m}"
        )));
    }
    if m > 31 {
        return Err(Error::Parameter(format!("m = {m} too large")));
    }
    Ok(())
}

/// Gold code over a given GF(2^m). Codewords are
/// t ↦ Tr(a α^t) + Tr(b α^{dt}) for t = 0..n with d = 2^k + 1; the
/// generator rows are the 2m choices a = α^i, b = 0 and a = 0, b = α^i.
pub fn gold_code_in(field: Arc<FieldSpec>, decimation: u32) -> Result<LinearCode> {
    if !field.is_binary() {
        return Err(Error::Parameter("Gold codes are binary".into()));
    }
    let m = field.degree();
    check_gold_params(m, decimation)?;
    let n = (field.order() - 1) as usize;
    let d = (1usize << decimation) + 1;

    // Tr(α^j) for j in 0..n
    let alpha = field.generator();
    let mut traces = Vec::with_capacity(n);
    let mut power = 1u32;
    for _ in 0..n {
        traces.push(field.trace(power));
        power = field.mul(power, alpha);
    }

    let mut rows = Vec::with_capacity(2 * m as usize);
    for i in 0..m as usize {
        rows.push((0..n).map(|t| traces[(i + t) % n]).collect());
    }
    for i in 0..m as usize {
        rows.push((0..n).map(|t| traces[(i + d * t) % n]).collect());
    }
    LinearCode::from_generator(Arc::new(FieldSpec::prime(2)?), rows, format!("gold:m={m}"))
}

/// Adds the all-ones vector to the generator matrix as a final row.
pub fn augment_all_ones(code: &LinearCode) -> Result<LinearCode> {
    let ones = vec![1u32; code.len()];
    if code.contains(&ones) {
        return Err(Error::AlreadyAugmented);
    }
    let mut rows = code.generator().to_vec();
    rows.push(ones);
    let name = match code.name().split_once(':') {
        Some((family, rest)) => format!("{family}+1:{rest}"),
        None => format!("{}+1", code.name()),
    };
    LinearCode::from_generator(Arc::clone(code.spec()), rows, name)
}

/// First-order binary Reed–Muller code RM(1, m), of length 2^m and
/// dimension m + 1: the all-ones row plus the m coordinate functions.
pub fn reed_muller_1(m: u32) -> Result<LinearCode> {
    if !(2..=20).contains(&m) {
        return Err(Error::Parameter(format!(
            "RM(1,m) needs 2 <= m <= 20, got {m}"
        )));
    }
    let n = 1usize << m;
    let mut rows = vec![vec![1u32; n]];
    for i in 0..m {
        rows.push((0..n).map(|t| ((t >> i) & 1) as u32).collect());
    }
    LinearCode::from_generator(Arc::new(FieldSpec::prime(2)?), rows, format!("rm1:m={m}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gold_dimensions() {
        let g5 = gold_code(5, 1).unwrap();
        assert_eq!((g5.len(), g5.dimension()), (31, 10));
        let g7 = gold_code(7, 1).unwrap();
        assert_eq!((g7.len(), g7.dimension()), (127, 14));
        let g3 = gold_code(3, 2).unwrap();
        assert_eq!((g3.len(), g3.dimension()), (7, 6));
    }

    #[test]
    fn gold_parameter_errors() {
        assert!(matches!(gold_code(5, 5), Err(Error::Parameter(_))));
        assert!(matches!(gold_code(4, 1), Err(Error::Parameter(_))));
        assert!(matches!(gold_code(1, 1), Err(Error::Parameter(_))));
        assert!(matches!(gold_code(9, 3), Err(Error::Parameter(_))));
        assert!(matches!(gold_code(5, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn gold_rows_are_shifted_traces() {
        // rows a = α^i are cyclic shifts of the m-sequence Tr(α^t)
        let g = gold_code(5, 1).unwrap();
        let rows = g.generator();
        for t in 0..31 {
            assert_eq!(rows[1][t], rows[0][(t + 1) % 31]);
        }
    }

    #[test]
    fn gold_with_modulus_override() {
        let f = FieldSpec::new(2, 5, FieldSpec::parse_modulus("1,1,1,1,0,1").unwrap()).unwrap();
        let g = gold_code_in(Arc::new(f), 1).unwrap();
        assert_eq!((g.len(), g.dimension()), (31, 10));
    }

    #[test]
    fn augment_examples() {
        let g5 = augment_all_ones(&gold_code(5, 1).unwrap()).unwrap();
        assert_eq!((g5.len(), g5.dimension()), (31, 11));
        assert_eq!(g5.name(), "gold+1:m=5");
        let g7 = augment_all_ones(&gold_code(7, 1).unwrap()).unwrap();
        assert_eq!((g7.len(), g7.dimension()), (127, 15));

        let rep = LinearCode::from_generator(
            Arc::new(FieldSpec::prime(2).unwrap()),
            vec![vec![1, 1, 1]],
            "rep",
        )
        .unwrap();
        assert!(matches!(
            augment_all_ones(&rep),
            Err(Error::AlreadyAugmented)
        ));
    }

    #[test]
    fn reed_muller_dimensions() {
        let rm3 = reed_muller_1(3).unwrap();
        assert_eq!((rm3.len(), rm3.dimension()), (8, 4));
        let rm4 = reed_muller_1(4).unwrap();
        assert_eq!((rm4.len(), rm4.dimension()), (16, 5));
        assert!(reed_muller_1(1).is_err());
    }
}
