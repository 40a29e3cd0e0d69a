//! Dense complex matrices for the 2×2 and 4×4 operators used throughout the
//! crate, and a cyclic Jacobi eigensolver for small Hermitian matrices.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::{Error, Result};

/// Hermiticity tolerance required of eigensolver inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius target of the Jacobi iteration, scaled by
/// `max(1, ‖A‖_F)`.
pub const JACOBI_RESIDUAL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{rows}x{cols} = {} entries", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::from_entries(rows, cols, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Kronecker product `a ⊗ b`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `max |M[i][j] − conj(M[j][i])|`, or infinity for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `self · x · self†`.
    pub fn conjugate(&self, x: &Self) -> Self {
        &(self * x) * &self.adjoint()
    }
}

/// `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrices in the computational basis, `σ₃ = diag(1, −1)`.
pub mod pauli {
    use super::ComplexMatrix;
    use num_complex::Complex64;

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn sigma1() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn sigma2() -> ComplexMatrix {
        let i = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        ComplexMatrix::from_entries(2, 2, vec![z, -i, i, z]).unwrap()
    }

    pub fn sigma3() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    /// `σ₁, σ₂, σ₃` for index 1, 2, 3.
    pub fn sigma(index: usize) -> ComplexMatrix {
        match index {
            1 => sigma1(),
            2 => sigma2(),
            3 => sigma3(),
            _ => panic!("Pauli index must be 1, 2 or 3, got {index}"),
        }
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues of a square Hermitian matrix by cyclic Jacobi rotations,
/// sorted ascending (stable for ties).
pub fn jacobi_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let deviation = m.hermiticity_defect();
    if deviation.is_nan() || deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }

    let n = m.rows();
    let mut a = m.clone();
    let target = JACOBI_RESIDUAL * m.frobenius_norm().max(1.0);
    let mut converged = false;

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
    }
    let residual = off_diagonal_norm(&a);
    if !converged && residual > target {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            residual,
        });
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// One complex Jacobi rotation zeroing `a[p][q]` and `a[q][p]`.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let magnitude = apq.norm();
    if magnitude < f64::MIN_POSITIVE {
        return;
    }
    let phase = apq / magnitude;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    // Phase-rotate q so the pivot is real, then apply the real symmetric
    // rotation: J = diag(1, e^{-iφ}) · [[c, s], [-s, c]].
    let theta = (aqq - app) / (2.0 * magnitude);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows();
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * jpp + aiq * jqp;
        a[(i, q)] = aip * jpq + aiq * jqq;
    }
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = jpp.conj() * apj + jqp.conj() * aqj;
        a[(q, j)] = jpq.conj() * apj + jqq.conj() * aqj;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// The four eigenvalues of a 4×4 Hermitian matrix, ascending.
pub fn hermitian_eigenvalues_ascending(m: &ComplexMatrix) -> Result<[f64; 4]> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::DimensionMismatch {
            expected: "4x4".into(),
            found: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let values = jacobi_eigenvalues(m)?;
    Ok([values[0], values[1], values[2], values[3]])
}

#[cfg(test)]
mod tests {
    use super::pauli::*;
    use super::*;
    use crate::random::{haar_unitary, random_hermitian, rng_from_seed};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kron_sigma3_identity_is_diagonal() {
        let m = kron(&sigma3(), &identity());
        assert_eq!(m, ComplexMatrix::from_diagonal(&[1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn kron_identities() {
        assert_eq!(kron(&identity(), &identity()), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_sigma1_sigma1_is_antidiagonal_ones() {
        let m = kron(&sigma1(), &sigma1());
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i + j == 3 { 1.0 } else { 0.0 };
                assert_eq!(m[(i, j)], c(expected), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn kron_dimensions() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(4, 1);
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (8, 3));
    }

    #[test]
    fn from_entries_rejects_bad_length() {
        assert!(ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn diagonal_spectrum() {
        let m = ComplexMatrix::from_diagonal(&[3.0, 1.0, 2.0, 0.0]);
        assert_eq!(hermitian_eigenvalues_ascending(&m).unwrap(), [0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn sigma1_sigma1_spectrum() {
        let ev = hermitian_eigenvalues_ascending(&kron(&sigma1(), &sigma1())).unwrap();
        let expected = [-1.0, -1.0, 1.0, 1.0];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14, "{ev:?}");
        }
    }

    #[test]
    fn sigma2_sigma2_spectrum() {
        let ev = hermitian_eigenvalues_ascending(&kron(&sigma2(), &sigma2())).unwrap();
        let expected = [-1.0, -1.0, 1.0, 1.0];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14, "{ev:?}");
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(
            4,
            4,
            &[
                1.0, 1.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        )
        .unwrap();
        assert!(matches!(
            hermitian_eigenvalues_ascending(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn rejects_wrong_dimension() {
        assert!(matches!(
            hermitian_eigenvalues_ascending(&ComplexMatrix::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn random_hermitian_trace_and_unitary_invariance() {
        let mut rng = rng_from_seed(7);
        for _ in 0..100 {
            let m = random_hermitian(&mut rng, 4);
            let ev = hermitian_eigenvalues_ascending(&m).unwrap();
            assert!(ev.windows(2).all(|w| w[0] <= w[1]));
            let sum: f64 = ev.iter().sum();
            assert!((sum - m.trace().re).abs() < 1e-11, "{sum} vs {}", m.trace().re);

            let u = haar_unitary(&mut rng, 4);
            let rotated = u.conjugate(&m);
            // conjugation leaves rounding-level anti-Hermitian residue
            let ev2 = hermitian_eigenvalues_ascending(&rotated).unwrap();
            for (a, b) in ev.iter().zip(ev2) {
                assert!((a - b).abs() < 1e-9, "{ev:?} vs {ev2:?}");
            }
        }
    }

    #[test]
    fn complex_pivot_is_handled() {
        // [[2, 1-i], [1+i, 3]] ⊕ diag(5, -1): eigenvalues 1, 4 from the block
        let i = Complex64::new(0.0, 1.0);
        let mut m = ComplexMatrix::from_diagonal(&[2.0, 3.0, 5.0, -1.0]);
        m[(0, 1)] = c(1.0) - i;
        m[(1, 0)] = c(1.0) + i;
        let ev = hermitian_eigenvalues_ascending(&m).unwrap();
        let expected = [-1.0, 1.0, 4.0, 5.0];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-13, "{ev:?}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn square(n: usize) -> impl Strategy<Value = ComplexMatrix> {
            proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |v| {
                ComplexMatrix::from_entries(n, n, v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
                    .unwrap()
            })
        }

        proptest! {
            #[test]
            fn trace_of_kron_is_product_of_traces(a in square(2), b in square(2)) {
                let lhs = kron(&a, &b).trace();
                let rhs = a.trace() * b.trace();
                prop_assert!((lhs - rhs).norm() <= 1e-12);
            }

            #[test]
            fn kron_is_bilinear(a in square(2), b in square(2), c in square(2), s in -3.0f64..3.0) {
                let lhs = kron(&(&a + &b.scale(s)), &c);
                let rhs = &kron(&a, &c) + &kron(&b, &c).scale(s);
                prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
            }

            #[test]
            fn spectrum_is_sorted(m in square(4)) {
                let h = (&m + &m.adjoint()).scale(0.5);
                let ev = hermitian_eigenvalues_ascending(&h).unwrap();
                prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }
}
