//! Dense complex matrices, a cyclic complex Jacobi eigensolver for
//! Hermitian input, and the Green function (M − zI)⁻¹.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;
const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { dim, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Domain("matrix rows must form a square".into()));
        }
        Ok(ComplexMatrix {
            dim,
            data: rows.concat(),
        })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data
            .chunks(self.dim.max(1))
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim;
        ComplexMatrix::from_fn(n, |i, j| (0..n).map(|l| self[(i, l)] * other[(l, j)]).sum())
    }

    /// Copy with row and column `l` set to zero.
    pub fn without(&self, l: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |i, j| {
            if i == l || j == l {
                Complex64::new(0.0, 0.0)
            } else {
                self[(i, j)]
            }
        })
    }

    /// First (row, col) where the matrix departs from its conjugate
    /// transpose by more than `tol`.
    pub fn hermitian_violation(&self, tol: f64) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in i..self.dim {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Eigenvalues of a Hermitian matrix in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Off-diagonal Frobenius norm when iteration stopped.
    pub residual: f64,
    pub sweeps: usize,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic-by-row complex Jacobi. Each step zeroes one off-diagonal pair
/// (j, k) with a unitary that first rotates the phase of a_jk away and
/// then applies a real plane rotation.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum> {
    let tol = HERMITIAN_TOL * m.max_abs().max(1.0);
    if let Some((row, col)) = m.hermitian_violation(tol) {
        return Err(Error::NotHermitian { row, col });
    }
    let n = m.dim();
    let mut a = m.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let stop = JACOBI_TOL * m.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    let mut residual = off_diagonal_norm(&a);
    while residual >= stop {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { residual });
        }
        for j in 0..n {
            for k in j + 1..n {
                rotate(&mut a, j, k);
            }
        }
        sweeps += 1;
        residual = off_diagonal_norm(&a);
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(Spectrum {
        values,
        residual,
        sweeps,
    })
}

fn rotate(a: &mut ComplexMatrix, j: usize, k: usize) {
    let ajk = a[(j, k)];
    let r = ajk.norm();
    if r == 0.0 {
        return;
    }
    let phase = ajk / r; // e^{iφ}
    let (ajj, akk) = (a[(j, j)].re, a[(k, k)].re);
    let tau = (akk - ajj) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase_conj = phase.conj();
    for l in 0..a.dim() {
        if l == j || l == k {
            continue;
        }
        let (alj, alk) = (a[(l, j)], a[(l, k)]);
        let new_lj = alj * c - alk * phase_conj * s;
        let new_lk = alj * s + alk * phase_conj * c;
        a[(l, j)] = new_lj;
        a[(l, k)] = new_lk;
        a[(j, l)] = new_lj.conj();
        a[(k, l)] = new_lk.conj();
    }
    a[(j, j)] = Complex64::new(ajj - t * r, 0.0);
    a[(k, k)] = Complex64::new(akk + t * r, 0.0);
    a[(j, k)] = Complex64::new(0.0, 0.0);
    a[(k, j)] = Complex64::new(0.0, 0.0);
}

/// LU factorization with partial pivoting.
struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    fn new(mut a: ComplexMatrix) -> Result<Self> {
        let n = a.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .expect("nonempty range");
            if a[(pivot, col)].norm() == 0.0 {
                return Err(Error::Singular);
            }
            if pivot != col {
                for c in 0..n {
                    let tmp = a[(col, c)];
                    a[(col, c)] = a[(pivot, c)];
                    a[(pivot, c)] = tmp;
                }
                perm.swap(col, pivot);
            }
            let d = a[(col, col)];
            for r in col + 1..n {
                let f = a[(r, col)] / d;
                a[(r, col)] = f;
                for c in col + 1..n {
                    let v = a[(col, c)];
                    a[(r, c)] -= f * v;
                }
            }
        }
        Ok(Lu { lu: a, perm })
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.dim();
        let mut x: Vec<Complex64> = self.perm.iter().map(|&i| b[i]).collect();
        for r in 0..n {
            for c in 0..r {
                let v = self.lu[(r, c)] * x[c];
                x[r] -= v;
            }
        }
        for r in (0..n).rev() {
            for c in r + 1..n {
                let v = self.lu[(r, c)] * x[c];
                x[r] -= v;
            }
            x[r] /= self.lu[(r, r)];
        }
        x
    }
}

/// G(z) = (M − zI)⁻¹ for Im z > 0.
pub fn green_function(m: &ComplexMatrix, z: Complex64) -> Result<ComplexMatrix> {
    if z.im.is_nan() || z.im <= 0.0 {
        return Err(Error::Domain(format!(
            "Green function needs Im z > 0, got {z}"
        )));
    }
    let n = m.dim();
    let mut shifted = m.clone();
    for i in 0..n {
        shifted[(i, i)] -= z;
    }
    let lu = Lu::new(shifted)?;
    let mut g = ComplexMatrix::zeros(n);
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    for col in 0..n {
        e.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
        e[col] = Complex64::new(1.0, 0.0);
        for (row, v) in lu.solve(&e).into_iter().enumerate() {
            g[(row, col)] = v;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = c(rng.gen_range(-2.0..2.0), 0.0);
            for j in i + 1..n {
                let v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
        m
    }

    #[test]
    fn two_by_two() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let s = hermitian_eigenvalues(&m).unwrap();
        assert!((s.values[0] + 1.0).abs() < 1e-14 && (s.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_three() {
        let s = hermitian_eigenvalues(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(s.values, vec![1.0, 1.0, 1.0]);
        assert_eq!(s.sweeps, 0);
    }

    #[test]
    fn complex_two_by_two_closed_form() {
        // [[a, b],[b̄, d]] has eigenvalues (a+d)/2 ± sqrt(((a−d)/2)² + |b|²)
        let b = c(0.3, -0.7);
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), b], vec![b.conj(), c(-0.5, 0.0)]])
            .unwrap();
        let s = hermitian_eigenvalues(&m).unwrap();
        let mid = 0.25;
        let rad = (0.75f64.powi(2) + b.norm_sqr()).sqrt();
        assert!((s.values[0] - (mid - rad)).abs() < 1e-13);
        assert!((s.values[1] - (mid + rad)).abs() < 1e-13);
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { row: 0, col: 1 })
        ));
        let mut m = ComplexMatrix::identity(2);
        m[(1, 1)] = c(1.0, 0.5);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { row: 1, col: 1 })
        ));
    }

    #[test]
    fn green_function_examples() {
        let g = green_function(&ComplexMatrix::zeros(1), c(0.0, 1.0)).unwrap();
        assert!((g[(0, 0)] - c(0.0, 1.0)).norm() < 1e-15);

        let m = ComplexMatrix::from_real_rows(&[vec![-1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let z = c(0.0, 1.0);
        let g = green_function(&m, z).unwrap();
        assert!((g[(0, 0)] - 1.0 / (c(-1.0, 0.0) - z)).norm() < 1e-15);
        assert!((g[(1, 1)] - 1.0 / (c(1.0, 0.0) - z)).norm() < 1e-15);
        assert!(g[(0, 1)].norm() < 1e-15);

        assert!(matches!(
            green_function(&m, c(0.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            green_function(&m, c(1.0, -1.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn green_trace_matches_eigenvalues() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let m = random_hermitian(&mut rng, 5);
        let z = c(0.3, 0.7);
        let g = green_function(&m, z).unwrap();
        let s = hermitian_eigenvalues(&m).unwrap();
        let from_eigs: Complex64 = s.values.iter().map(|&l| 1.0 / (c(l, 0.0) - z)).sum();
        assert!((g.trace() / 5.0 - from_eigs / 5.0).norm() < 1e-8);

        let mut shifted = m.clone();
        for i in 0..5 {
            shifted[(i, i)] -= z;
        }
        let prod = shifted.mul(&g);
        let id = ComplexMatrix::identity(5);
        let err = (0..5)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .map(|(i, j)| (prod[(i, j)] - id[(i, j)]).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-8);
    }

    #[test]
    fn zero_matrix_has_zero_spectrum() {
        let s = hermitian_eigenvalues(&ComplexMatrix::zeros(4)).unwrap();
        assert_eq!(s.values, vec![0.0; 4]);
    }

    proptest! {
        #[test]
        fn trace_and_frobenius_conserved(seed in any::<u64>(), n in 1usize..12) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = random_hermitian(&mut rng, n);
            let s = hermitian_eigenvalues(&m).unwrap();
            let fro = m.frobenius_norm();
            prop_assert!(s.values.windows(2).all(|w| w[0] <= w[1]));
            let sum: f64 = s.values.iter().sum();
            prop_assert!((sum - m.trace().re).abs() <= 1e-9 * fro.max(1.0));
            let sq: f64 = s.values.iter().map(|x| x * x).sum();
            prop_assert!((sq - fro * fro).abs() <= 1e-9 * (fro * fro).max(1.0));
        }
    }
}
