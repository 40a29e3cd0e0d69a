//! Seeded samplers for states, coefficients, Hermitian matrices and Haar
//! unitaries. All draws go through ChaCha8 so a seed reproduces the same
//! values on every platform.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::linalg::ComplexMatrix;
use crate::model::{BellCoefficients, TwoQubitState};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let entries = (0..n * n).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_entries(n, n, entries).expect("n*n entries")
}

/// Hermitian matrix `(G + G†)/2` with `G` Ginibre.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    (&g + &g.adjoint()).scale(0.5)
}

/// Haar-distributed unitary: modified Gram–Schmidt on the columns of a
/// Ginibre matrix, which leaves the triangular factor with a positive real
/// diagonal.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    let mut columns: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| g[(i, j)]).collect()).collect();

    for j in 0..n {
        for k in 0..j {
            let (done, rest) = columns.split_at_mut(j);
            let qk = &done[k];
            let vj = &mut rest[0];
            let proj: Complex64 = qk.iter().zip(vj.iter()).map(|(a, b)| a.conj() * b).sum();
            for (v, q) in vj.iter_mut().zip(qk) {
                *v -= proj * q;
            }
        }
        let norm = columns[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for v in columns[j].iter_mut() {
            *v /= norm;
        }
    }

    let mut u = ComplexMatrix::zeros(n, n);
    for (j, col) in columns.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

/// Random full-rank two-qubit density matrix `G G† / tr(G G†)`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    let g = ginibre(rng, 4);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    TwoQubitState::from_matrix_unchecked(gg.scale(1.0 / tr))
}

/// Bell coefficients drawn uniformly from the physical tetrahedron: the
/// spectrum `λ` is uniform on the 3-simplex and mapped back to `c`.
pub fn random_bell_coefficients<R: Rng + ?Sized>(rng: &mut R) -> BellCoefficients {
    let e: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
    let total: f64 = e.iter().sum();
    let lambda = e.map(|x| x / total);
    BellCoefficients::from_spectrum(lambda)
}

/// Uniform physical coefficients conditioned on all three positive and
/// pairwise distinct, i.e. some ordering branch applies.
pub fn random_branch_coefficients<R: Rng + ?Sized>(rng: &mut R) -> BellCoefficients {
    loop {
        let c = random_bell_coefficients(rng);
        if crate::capacity::select_branch(&c).is_some() {
            return c;
        }
    }
}
