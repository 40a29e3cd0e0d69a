//! Bell-diagonal states, general two-qubit density matrices and the battery
//! Hamiltonian `H = εᴬ σ₃⊗I + εᴮ I⊗σ₃`.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩` with `σ₃ = diag(1, −1)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{hermitian_eigenvalues_ascending, kron, pauli, ComplexMatrix, HERMITIAN_TOL};
use crate::{Error, Result};

/// Smallest accepted Bell eigenvalue / state eigenvalue.
pub const PHYSICAL_TOL: f64 = 1e-10;

/// Accepted deviation of a state's trace from one.
pub const TRACE_TOL: f64 = 1e-12;

/// Accepted magnitude of entries outside the Bell-diagonal pattern.
pub const BELL_PATTERN_TOL: f64 = 1e-10;

/// Correlation coefficients `(c₁, c₂, c₃)` of
/// `ρ = ¼ (I⊗I + Σᵢ cᵢ σᵢ⊗σᵢ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellCoefficients {
    /// Physical coefficients; fails with [`Error::Unphysical`] naming the
    /// first negative `λⱼ`.
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let c = Self { c1, c2, c3 };
        c.check_physical()?;
        Ok(c)
    }

    /// No physicality check. Used for intermediate values such as the
    /// outputs of closed-form coefficient maps.
    pub const fn new_unchecked(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn from_array(c: [f64; 3]) -> Result<Self> {
        Self::new(c[0], c[1], c[2])
    }

    /// Inverse of [`BellCoefficients::spectrum`] for a spectrum summing to one.
    pub fn from_spectrum(lambda: [f64; 4]) -> Self {
        let [_, l1, l2, l3] = lambda;
        Self {
            c1: 2.0 * (l2 + l3) - 1.0,
            c2: 2.0 * (l1 + l3) - 1.0,
            c3: 2.0 * (l1 + l2) - 1.0,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// `(λ₀, λ₁, λ₂, λ₃)` in that fixed (unsorted) order.
    pub fn spectrum(&self) -> [f64; 4] {
        let Self { c1, c2, c3 } = *self;
        [
            (1.0 - c1 - c2 - c3) / 4.0,
            (1.0 - c1 + c2 + c3) / 4.0,
            (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0,
        ]
    }

    pub fn check_physical(&self) -> Result<()> {
        if !self.as_array().iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite coefficients {self:?}")));
        }
        for (index, value) in self.spectrum().into_iter().enumerate() {
            if value < -PHYSICAL_TOL {
                return Err(Error::Unphysical { index, value });
            }
        }
        Ok(())
    }

    /// Largest componentwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A 4×4 Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    matrix: ComplexMatrix,
}

impl TwoQubitState {
    /// Validated construction.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let state = Self::from_matrix_unchecked(matrix);
        state.validate()?;
        Ok(state)
    }

    /// Wraps a matrix without the eigenvalue check. Channel outputs use this
    /// since CPTP maps preserve validity; call [`TwoQubitState::validate`]
    /// to confirm.
    pub fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        assert!(matrix.rows() == 4 && matrix.cols() == 4, "two-qubit state must be 4x4");
        Self { matrix }
    }

    pub fn maximally_mixed() -> Self {
        Self::from_matrix_unchecked(ComplexMatrix::identity(4).scale(0.25))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn validate(&self) -> Result<()> {
        let deviation = self.matrix.hermiticity_defect();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = self.matrix.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
        }
        let min = self.eigenvalues()?[0];
        if min < -PHYSICAL_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    /// Eigenvalues ascending (numeric).
    pub fn eigenvalues(&self) -> Result<[f64; 4]> {
        hermitian_eigenvalues_ascending(&self.matrix)
    }

    /// `tr_B ρ`.
    pub fn reduced_a(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] = (0..2).map(|k| self.matrix[(2 * i + k, 2 * j + k)]).sum();
            }
        }
        out
    }

    /// `tr_A ρ`.
    pub fn reduced_b(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] = (0..2).map(|k| self.matrix[(2 * k + i, 2 * k + j)]).sum();
            }
        }
        out
    }
}

/// `ρ = ¼ (I⊗I + Σᵢ cᵢ σᵢ⊗σᵢ)`, written entrywise.
pub fn bell_density(c: &BellCoefficients) -> Result<TwoQubitState> {
    c.check_physical()?;
    let BellCoefficients { c1, c2, c3 } = *c;
    let d_outer = (1.0 + c3) / 4.0;
    let d_inner = (1.0 - c3) / 4.0;
    let corner = (c1 - c2) / 4.0;
    let middle = (c1 + c2) / 4.0;
    #[rustfmt::skip]
    let entries = [
        d_outer, 0.0,     0.0,     corner,
        0.0,     d_inner, middle,  0.0,
        0.0,     middle,  d_inner, 0.0,
        corner,  0.0,     0.0,     d_outer,
    ];
    Ok(TwoQubitState::from_matrix_unchecked(
        ComplexMatrix::from_real(4, 4, &entries).expect("16 entries"),
    ))
}

/// Closed-form spectrum `(λ₀, λ₁, λ₂, λ₃)` of [`bell_density`].
pub fn bell_spectrum(c: &BellCoefficients) -> Result<[f64; 4]> {
    c.check_physical()?;
    Ok(c.spectrum())
}

const BELL_PATTERN: [(usize, usize); 8] = [(0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)];

/// Largest violation of the Bell-diagonal pattern: off-pattern entries,
/// unequal paired diagonals, and imaginary parts on the anti-diagonal.
pub fn bell_pattern_defect(m: &ComplexMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if !BELL_PATTERN.contains(&(i, j)) {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst = worst.max((m[(0, 0)] - m[(3, 3)]).norm());
    worst = worst.max((m[(1, 1)] - m[(2, 2)]).norm());
    worst = worst.max((m[(0, 3)] - m[(3, 0)]).norm());
    worst = worst.max((m[(1, 2)] - m[(2, 1)]).norm());
    worst = worst.max(m[(0, 3)].im.abs()).max(m[(1, 2)].im.abs());
    worst
}

/// Inverse of [`bell_density`] through `cᵢ = tr(ρ σᵢ⊗σᵢ)`.
pub fn extract_coefficients(rho: &TwoQubitState) -> Result<BellCoefficients> {
    let m = rho.matrix();
    let deviation = bell_pattern_defect(m);
    if deviation > BELL_PATTERN_TOL {
        return Err(Error::NotBellDiagonal { deviation });
    }
    let coefficient = |i: usize| {
        let s = pauli::sigma(i);
        (m * &kron(&s, &s)).trace().re
    };
    Ok(BellCoefficients::new_unchecked(
        coefficient(1),
        coefficient(2),
        coefficient(3),
    ))
}

/// `H = εᴬ σ₃⊗I + εᴮ I⊗σ₃` with `εᴬ ≥ εᴮ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatteryHamiltonian {
    eps_a: f64,
    eps_b: f64,
}

impl BatteryHamiltonian {
    pub fn new(eps_a: f64, eps_b: f64) -> Result<Self> {
        if !(eps_a.is_finite() && eps_b.is_finite() && eps_a >= eps_b && eps_b >= 0.0) {
            return Err(Error::InvalidHamiltonian { eps_a, eps_b });
        }
        Ok(Self { eps_a, eps_b })
    }

    pub fn eps_a(&self) -> f64 {
        self.eps_a
    }

    pub fn eps_b(&self) -> f64 {
        self.eps_b
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let (a, b) = (self.eps_a, self.eps_b);
        ComplexMatrix::from_diagonal(&[a + b, a - b, -a + b, -a - b])
    }

    /// `(−εᴬ−εᴮ, −εᴬ+εᴮ, εᴬ−εᴮ, εᴬ+εᴮ)`.
    pub fn eigenenergies_ascending(&self) -> [f64; 4] {
        let (a, b) = (self.eps_a, self.eps_b);
        [-a - b, -a + b, a - b, a + b]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli::{identity, sigma};
    use crate::random::{random_bell_coefficients, rng_from_seed};

    fn coeffs(c1: f64, c2: f64, c3: f64) -> BellCoefficients {
        BellCoefficients::new(c1, c2, c3).unwrap()
    }

    fn kron_sum(c: &BellCoefficients) -> ComplexMatrix {
        let mut m = kron(&identity(), &identity());
        for (i, ci) in c.as_array().into_iter().enumerate() {
            let s = sigma(i + 1);
            m = &m + &kron(&s, &s).scale(ci);
        }
        m.scale(0.25)
    }

    #[test]
    fn maximally_mixed() {
        let rho = bell_density(&coeffs(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(rho.matrix(), &ComplexMatrix::identity(4).scale(0.25));
    }

    #[test]
    fn pure_bell_state_projector() {
        let rho = bell_density(&coeffs(1.0, -1.0, 1.0)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = ComplexMatrix::from_real(4, 1, &[h, 0.0, 0.0, h]).unwrap();
        let projector = &psi * &psi.adjoint();
        assert!(rho.matrix().max_abs_diff(&projector) < 1e-15);
    }

    #[test]
    fn running_example_entries() {
        let m = bell_density(&coeffs(0.5, 0.3, 0.1)).unwrap().into_matrix();
        let re = |i, j| m[(i, j)].re;
        for (i, d) in [0.275, 0.225, 0.225, 0.275].into_iter().enumerate() {
            assert!((re(i, i) - d).abs() < 1e-15);
        }
        assert!((re(0, 3) - 0.05).abs() < 1e-15 && (re(3, 0) - 0.05).abs() < 1e-15);
        assert!((re(1, 2) - 0.2).abs() < 1e-15 && (re(2, 1) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn entrywise_form_matches_pauli_sum() {
        let c = coeffs(0.5, 0.3, 0.1);
        let m = bell_density(&c).unwrap();
        assert!(m.matrix().max_abs_diff(&kron_sum(&c)) < 1e-15);
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(bell_spectrum(&coeffs(0.0, 0.0, 0.0)).unwrap(), [0.25; 4]);
        let s = bell_spectrum(&coeffs(0.5, 0.3, 0.1)).unwrap();
        for (a, b) in s.iter().zip([0.025, 0.225, 0.325, 0.425]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(bell_spectrum(&coeffs(1.0, -1.0, 1.0)).unwrap(), [0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn unphysical_names_lambda() {
        match BellCoefficients::new(0.9, 0.9, 0.9) {
            Err(Error::Unphysical { index, value }) => {
                assert_eq!(index, 0);
                assert!((value + 0.425).abs() < 1e-15);
            }
            other => panic!("expected Unphysical, got {other:?}"),
        }
    }

    #[test]
    fn extract_examples() {
        let c = extract_coefficients(&TwoQubitState::maximally_mixed()).unwrap();
        assert_eq!(c.as_array(), [0.0, 0.0, 0.0]);
        let c0 = coeffs(0.5, 0.3, 0.1);
        let back = extract_coefficients(&bell_density(&c0).unwrap()).unwrap();
        assert!(back.max_abs_diff(&c0) < 1e-12);
    }

    #[test]
    fn extract_rejects_x_state() {
        let mut m = bell_density(&coeffs(0.5, 0.3, 0.1)).unwrap().into_matrix();
        m[(0, 0)] += Complex64::new(0.1, 0.0);
        m[(3, 3)] -= Complex64::new(0.1, 0.0);
        let rho = TwoQubitState::from_matrix_unchecked(m);
        assert!(matches!(extract_coefficients(&rho), Err(Error::NotBellDiagonal { .. })));
    }

    #[test]
    fn hamiltonian_levels() {
        let h = BatteryHamiltonian::new(0.6, 0.3).unwrap();
        let e = h.eigenenergies_ascending();
        for (a, b) in e.iter().zip([-0.9, -0.3, 0.3, 0.9]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(
            BatteryHamiltonian::new(1.0, 0.0).unwrap().eigenenergies_ascending(),
            [-1.0, -1.0, 1.0, 1.0]
        );
        assert_eq!(
            BatteryHamiltonian::new(0.5, 0.5).unwrap().eigenenergies_ascending(),
            [-1.0, 0.0, 0.0, 1.0]
        );
    }

    #[test]
    fn hamiltonian_matrix_is_kron_sum() {
        let h = BatteryHamiltonian::new(0.6, 0.3).unwrap();
        let expected = &kron(&sigma(3), &identity()).scale(0.6) + &kron(&identity(), &sigma(3)).scale(0.3);
        assert!(h.matrix().max_abs_diff(&expected) < 1e-15);
        let numeric = hermitian_eigenvalues_ascending(&h.matrix()).unwrap();
        assert_eq!(numeric, h.eigenenergies_ascending());
    }

    #[test]
    fn hamiltonian_rejects_bad_ordering() {
        assert!(BatteryHamiltonian::new(0.3, 0.6).is_err());
        assert!(BatteryHamiltonian::new(0.6, -0.1).is_err());
    }

    #[test]
    fn random_states_round_trip_and_match_eigensolver() {
        let mut rng = rng_from_seed(11);
        let half = ComplexMatrix::identity(2).scale(0.5);
        for _ in 0..1000 {
            let c = random_bell_coefficients(&mut rng);
            let rho = bell_density(&c).unwrap();
            rho.validate().unwrap();

            let mut closed = bell_spectrum(&c).unwrap();
            closed.sort_by(f64::total_cmp);
            let numeric = rho.eigenvalues().unwrap();
            for (a, b) in closed.iter().zip(numeric) {
                assert!((a - b).abs() <= 1e-12, "{closed:?} vs {numeric:?}");
            }

            let back = extract_coefficients(&rho).unwrap();
            assert!(back.max_abs_diff(&c) <= 1e-12);

            assert!(rho.reduced_a().max_abs_diff(&half) <= 1e-15);
            assert!(rho.reduced_b().max_abs_diff(&half) <= 1e-15);
        }
    }
}
