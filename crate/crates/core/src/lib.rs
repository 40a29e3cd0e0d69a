//! Quantum-battery capacity of two-qubit Bell-diagonal states under local
//! channels.
//!
//! The crate evaluates the capacity functional
//! `C(ρ, H) = Σᵢ εᵢ (λᵢ − λ_{d−1−i})` (both spectra ascending) for states
//! produced by bit-flip, phase-flip, bit-phase-flip, depolarizing, amplitude
//! damping and generalized amplitude damping noise, applied once, `n` times,
//! or independently on both qubits. Every closed-form coefficient map and
//! capacity expression is paired with a brute-force operator-sum evolution
//! followed by a numeric eigensolve, and [`analysis::oracle_crosscheck`]
//! compares the two routes.
//!
//! ```
//! use qbattery::{capacity, model::{BatteryHamiltonian, BellCoefficients}};
//!
//! let c = BellCoefficients::new(0.5, 0.3, 0.1).unwrap();
//! let h = BatteryHamiltonian::new(0.6, 0.3).unwrap();
//! let value = capacity::capacity(&c, &h).unwrap();
//! assert!((value - 0.78).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod capacity;
pub mod channels;
pub mod cli;
mod error;
pub mod linalg;
pub mod model;
pub mod random;

pub use error::{Error, Result};
