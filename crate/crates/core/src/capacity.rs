//! The battery-capacity functional
//! `C(ρ, H) = Σᵢ εᵢ (λᵢ − λ_{d−1−i})`, the six ordering-branch closed forms
//! for Bell-diagonal states, and the amplitude-damping closed forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channels::{adc_damping_factor, adc_gaps, check_probability};
use crate::model::{bell_density, BatteryHamiltonian, BellCoefficients, TwoQubitState, PHYSICAL_TOL};
use crate::{Error, Result};

/// Capacity from an (unsorted) state spectrum. Eigenvalues in
/// `[−PHYSICAL_TOL, 0)` are clamped to zero before a stable ascending sort.
pub fn capacity_from_eigenvalues(eigenvalues: [f64; 4], h: &BatteryHamiltonian) -> f64 {
    let mut lambda = eigenvalues.map(|l| if (-PHYSICAL_TOL..0.0).contains(&l) { 0.0 } else { l });
    lambda.sort_by(f64::total_cmp);
    let eps = h.eigenenergies_ascending();
    (0..4).map(|i| eps[i] * (lambda[i] - lambda[3 - i])).sum()
}

/// Capacity of an arbitrary two-qubit state via the numeric spectrum. The
/// result is not clamped.
pub fn capacity_general(rho: &TwoQubitState, h: &BatteryHamiltonian) -> Result<f64> {
    Ok(capacity_from_eigenvalues(rho.eigenvalues()?, h))
}

/// Strict ordering `c_a > c_b > c_c > 0` of the three Bell coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrderingBranch {
    #[serde(rename = "123")]
    B123,
    #[serde(rename = "132")]
    B132,
    #[serde(rename = "213")]
    B213,
    #[serde(rename = "231")]
    B231,
    #[serde(rename = "312")]
    B312,
    #[serde(rename = "321")]
    B321,
}

impl OrderingBranch {
    pub const ALL: [OrderingBranch; 6] = [
        OrderingBranch::B123,
        OrderingBranch::B132,
        OrderingBranch::B213,
        OrderingBranch::B231,
        OrderingBranch::B312,
        OrderingBranch::B321,
    ];

    /// Zero-based coefficient indices from largest to smallest.
    pub fn indices(self) -> [usize; 3] {
        match self {
            OrderingBranch::B123 => [0, 1, 2],
            OrderingBranch::B132 => [0, 2, 1],
            OrderingBranch::B213 => [1, 0, 2],
            OrderingBranch::B231 => [1, 2, 0],
            OrderingBranch::B312 => [2, 0, 1],
            OrderingBranch::B321 => [2, 1, 0],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OrderingBranch::B123 => "123",
            OrderingBranch::B132 => "132",
            OrderingBranch::B213 => "213",
            OrderingBranch::B231 => "231",
            OrderingBranch::B312 => "312",
            OrderingBranch::B321 => "321",
        }
    }

    pub fn applies(self, c: &BellCoefficients) -> bool {
        let v = c.as_array();
        let [a, b, d] = self.indices();
        v[a] > v[b] && v[b] > v[d] && v[d] > 0.0
    }

    /// `(c_a + c_b)(εᴬ + εᴮ) + (c_a − c_b)(εᴬ − εᴮ)` without checking that
    /// the branch applies.
    pub fn formula(self, c: &BellCoefficients, h: &BatteryHamiltonian) -> f64 {
        let v = c.as_array();
        let [a, b, _] = self.indices();
        let (ea, eb) = (h.eps_a(), h.eps_b());
        (v[a] + v[b]) * (ea + eb) + (v[a] - v[b]) * (ea - eb)
    }
}

impl fmt::Display for OrderingBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for OrderingBranch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.label() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown ordering branch {s:?}")))
    }
}

/// Closed-form capacity on one ordering branch.
pub fn capacity_branch(c: &BellCoefficients, h: &BatteryHamiltonian, branch: OrderingBranch) -> Result<f64> {
    if !branch.applies(c) {
        return Err(Error::BranchNotApplicable {
            branch: branch.label().into(),
            c1: c.c1,
            c2: c.c2,
            c3: c.c3,
        });
    }
    Ok(branch.formula(c, h))
}

/// The unique branch whose strict ordering holds, if any.
pub fn select_branch(c: &BellCoefficients) -> Option<OrderingBranch> {
    OrderingBranch::ALL.into_iter().find(|b| b.applies(c))
}

/// Capacity of a Bell-diagonal state: branch formula when one applies,
/// otherwise the general definition on the density matrix.
pub fn capacity(c: &BellCoefficients, h: &BatteryHamiltonian) -> Result<f64> {
    match select_branch(c) {
        Some(branch) => Ok(branch.formula(c, h)),
        None => capacity_general(&bell_density(c)?, h),
    }
}

/// Eigenvalue orderings of the amplitude-damped state that have closed-form
/// capacities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdcOrdering {
    /// `u₀ ≤ u₂ ≤ u₃ ≤ u₁`
    Standard,
    /// `u₀ ≤ u₂ ≤ u₁ ≤ u₃`
    Swapped,
}

impl AdcOrdering {
    /// The ordering branch the paired closed form is named after.
    pub fn branch(self) -> OrderingBranch {
        match self {
            AdcOrdering::Standard => OrderingBranch::B123,
            AdcOrdering::Swapped => OrderingBranch::B231,
        }
    }
}

/// Ordering of `(u₀, u₁, u₂, u₃)` decided on cancellation-free gaps.
/// `strict` demands positive gaps; otherwise ties are admitted.
pub fn adc_ordering(c: &BellCoefficients, p: f64, n: u32, strict: bool) -> Option<AdcOrdering> {
    let g = adc_gaps(c, p, n);
    let ok = |x: f64| if strict { x > 0.0 } else { x >= 0.0 };
    if ok(g.u2_minus_u0) && ok(g.u3_minus_u2) && ok(-g.u3_minus_u1) {
        Some(AdcOrdering::Standard)
    } else if ok(g.u2_minus_u0) && ok(g.u1_minus_u2) && ok(g.u3_minus_u1) {
        Some(AdcOrdering::Swapped)
    } else {
        None
    }
}

/// Closed-form capacity of a Bell-diagonal state after `n` passes of the
/// amplitude damping channel on the first qubit.
///
/// With `x = (1−p)ⁿ`, `s± = √((c₁±c₂)² x + (1−x)²)`:
/// the standard ordering gives `s₊(εᴬ+εᴮ) + s₋(εᴬ−εᴮ)`, the swapped one
/// `½(2c₃x + s₊ + s₋)(εᴬ+εᴮ) + ½(−2c₃x + s₊ + s₋)(εᴬ−εᴮ)`.
pub fn capacity_adc_closed(c: &BellCoefficients, h: &BatteryHamiltonian, p: f64, n: u32) -> Result<(f64, AdcOrdering)> {
    check_probability("p", p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    c.check_physical()?;
    let ordering = adc_ordering(c, p, n, false).ok_or(Error::OrderingAssumptionViolated)?;

    let x = adc_damping_factor(p, n);
    let decay = 1.0 - x;
    let s_plus = ((c.c1 + c.c2).powi(2) * x + decay * decay).sqrt();
    let s_minus = ((c.c1 - c.c2).powi(2) * x + decay * decay).sqrt();
    let (ea, eb) = (h.eps_a(), h.eps_b());

    let value = match ordering {
        AdcOrdering::Standard => s_plus * (ea + eb) + s_minus * (ea - eb),
        AdcOrdering::Swapped => {
            0.5 * (2.0 * c.c3 * x + s_minus + s_plus) * (ea + eb)
                + 0.5 * (-2.0 * c.c3 * x + s_plus + s_minus) * (ea - eb)
        }
    };
    Ok((value, ordering))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{adc_output, apply_n_times, kraus_set, ChannelKind, LocalChannel};
    use crate::linalg::ComplexMatrix;
    use crate::random::{haar_unitary, random_branch_coefficients, random_density, rng_from_seed};
    use rand::Rng;

    fn c(c1: f64, c2: f64, c3: f64) -> BellCoefficients {
        BellCoefficients::new(c1, c2, c3).unwrap()
    }

    fn h() -> BatteryHamiltonian {
        BatteryHamiltonian::new(0.6, 0.3).unwrap()
    }

    #[test]
    fn maximally_mixed_is_exactly_zero() {
        for (a, b) in [(0.6, 0.3), (1.0, 0.0), (2.5, 2.5), (0.0, 0.0)] {
            let h = BatteryHamiltonian::new(a, b).unwrap();
            assert_eq!(capacity_general(&TwoQubitState::maximally_mixed(), &h).unwrap(), 0.0);
        }
    }

    #[test]
    fn pure_state_capacity_is_full_band() {
        let rho = bell_density(&c(1.0, -1.0, 1.0)).unwrap();
        assert!((capacity_general(&rho, &h()).unwrap() - 1.8).abs() < 1e-12);
    }

    #[test]
    fn running_example_brute_force() {
        // sort (0.025, 0.225, 0.325, 0.425) against (-0.9, -0.3, 0.3, 0.9)
        let lambda = [0.025, 0.225, 0.325, 0.425];
        let eps = [-0.9, -0.3, 0.3, 0.9];
        let oracle: f64 = (0..4).map(|i| eps[i] * (lambda[i] - lambda[3 - i])).sum();
        assert!((oracle - 0.78).abs() < 1e-15);

        let rho = bell_density(&c(0.5, 0.3, 0.1)).unwrap();
        assert!((capacity_general(&rho, &h()).unwrap() - oracle).abs() < 1e-12);
        let branch = capacity_branch(&c(0.5, 0.3, 0.1), &h(), OrderingBranch::B123).unwrap();
        assert!((branch - 0.78).abs() < 1e-15);
    }

    #[test]
    fn branch_231_example() {
        let v = capacity_branch(&c(0.1, 0.5, 0.3), &h(), OrderingBranch::B231).unwrap();
        assert!((v - 0.78).abs() < 1e-15);
    }

    #[test]
    fn tie_is_not_applicable() {
        assert!(matches!(
            capacity_branch(&c(0.4, 0.4, 0.1), &h(), OrderingBranch::B123),
            Err(Error::BranchNotApplicable { .. })
        ));
        // the public entry point falls back
        let general = capacity_general(&bell_density(&c(0.4, 0.4, 0.1)).unwrap(), &h()).unwrap();
        assert!((capacity(&c(0.4, 0.4, 0.1), &h()).unwrap() - general).abs() < 1e-15);
    }

    #[test]
    fn branch_selection() {
        assert_eq!(select_branch(&c(0.5, 0.3, 0.1)), Some(OrderingBranch::B123));
        assert_eq!(select_branch(&c(0.1, 0.5, 0.3)), Some(OrderingBranch::B231));
        assert_eq!(select_branch(&c(0.5, -0.3, 0.1)), None);
        assert_eq!(select_branch(&c(0.3, 0.1, 0.5)), Some(OrderingBranch::B312));
        assert_eq!(select_branch(&c(0.0, 0.0, 0.0)), None);
    }

    #[test]
    fn branch_labels_round_trip() {
        for b in OrderingBranch::ALL {
            assert_eq!(b.label().parse::<OrderingBranch>().unwrap(), b);
        }
    }

    #[test]
    fn every_branch_matches_general_definition() {
        let mut rng = rng_from_seed(21);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..1000 {
            let coeffs = random_branch_coefficients(&mut rng);
            let eps_a = rng.random_range(0.0..2.0);
            let eps_b = rng.random_range(0.0..=eps_a);
            let h = BatteryHamiltonian::new(eps_a, eps_b).unwrap();
            let branch = select_branch(&coeffs).unwrap();
            seen.insert(branch);
            let closed = capacity_branch(&coeffs, &h, branch).unwrap();
            let general = capacity_general(&bell_density(&coeffs).unwrap(), &h).unwrap();
            assert!(
                (closed - general).abs() <= 1e-12,
                "{coeffs:?} {branch}: {closed} vs {general}"
            );
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn nonnegative_and_unitarily_invariant() {
        let mut rng = rng_from_seed(33);
        for i in 0..1000 {
            let rho = random_density(&mut rng);
            let eps_a = rng.random_range(0.0..2.0);
            let eps_b = rng.random_range(0.0..=eps_a);
            let h = BatteryHamiltonian::new(eps_a, eps_b).unwrap();
            let value = capacity_general(&rho, &h).unwrap();
            assert!(value >= -1e-12);
            if i < 100 {
                let u = haar_unitary(&mut rng, 4);
                let rotated = TwoQubitState::from_matrix_unchecked(u.conjugate(rho.matrix()));
                let moved = capacity_general(&rotated, &h).unwrap();
                assert!((moved - value).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn permuting_tied_eigenvalues_changes_nothing() {
        let h = h();
        let spectra = [
            [0.1, 0.2, 0.2, 0.5],
            [0.25, 0.25, 0.25, 0.25],
            [0.0, 0.0, 0.5, 0.5],
            [0.3, 0.3, 0.3, 0.1],
        ];
        for s in spectra {
            let reference = capacity_from_eigenvalues(s, &h);
            for perm in permutations4() {
                let permuted = perm.map(|i| s[i]);
                assert_eq!(capacity_from_eigenvalues(permuted, &h), reference);
            }
        }
        let degenerate_h = BatteryHamiltonian::new(0.5, 0.5).unwrap();
        let diag = ComplexMatrix::from_diagonal(&[0.1, 0.2, 0.3, 0.4]);
        let v = capacity_general(&TwoQubitState::new(diag).unwrap(), &degenerate_h).unwrap();
        assert!((v - 0.6).abs() < 1e-15);
    }

    fn permutations4() -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let mut sorted = p;
                        sorted.sort();
                        if sorted == [0, 1, 2, 3] {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn adc_closed_identity_limit() {
        let (v, ordering) = capacity_adc_closed(&c(0.5, 0.3, 0.1), &h(), 0.0, 1).unwrap();
        assert_eq!(ordering, AdcOrdering::Standard);
        assert!((v - 0.78).abs() < 1e-15);
    }

    #[test]
    fn adc_closed_half_damping() {
        let expected = 0.9 * 0.57f64.sqrt() + 0.3 * 0.27f64.sqrt();
        let (v, _) = capacity_adc_closed(&c(0.5, 0.3, 0.1), &h(), 0.5, 1).unwrap();
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 0.835370).abs() < 1e-6);

        // brute force: Kraus evolution then the spectrum definition
        let rho = apply_n_times(
            &bell_density(&c(0.5, 0.3, 0.1)).unwrap(),
            &LocalChannel::First(kraus_set(ChannelKind::AmplitudeDamping, 0.5).unwrap()),
            1,
        );
        assert!((capacity_general(&rho, &h()).unwrap() - v).abs() < 1e-12);
    }

    #[test]
    fn adc_closed_full_damping() {
        for n in [1, 2, 7, 100] {
            let (v, _) = capacity_adc_closed(&c(0.5, 0.3, 0.1), &h(), 1.0, n).unwrap();
            assert!((v - 1.2).abs() < 1e-12, "n={n}: {v}");
        }
    }

    #[test]
    fn adc_swapped_ordering_matches_general() {
        let coeffs = c(0.1, 0.5, 0.3);
        for k in 1..100 {
            let p = k as f64 / 100.0;
            for n in [1, 2, 10] {
                let (v, ordering) = capacity_adc_closed(&coeffs, &h(), p, n).unwrap();
                assert_eq!(ordering, AdcOrdering::Swapped);
                let general = capacity_general(&adc_output(&coeffs, p, n).unwrap(), &h()).unwrap();
                assert!((v - general).abs() < 1e-12, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn adc_ordering_violation_is_reported() {
        // strongly negative c3 pushes u2 below u0
        let coeffs = c(0.1, 0.1, -0.5);
        let res = capacity_adc_closed(&coeffs, &h(), 0.2, 1);
        assert!(matches!(res, Err(Error::OrderingAssumptionViolated)), "{res:?}");
    }

    #[test]
    fn adc_rejects_bad_parameters() {
        assert!(capacity_adc_closed(&c(0.5, 0.3, 0.1), &h(), 1.5, 1).is_err());
        assert!(capacity_adc_closed(&c(0.5, 0.3, 0.1), &h(), 0.5, 0).is_err());
    }
}
