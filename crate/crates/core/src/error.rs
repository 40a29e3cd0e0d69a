use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("unphysical Bell coefficients: lambda{index} = {value}")]
    Unphysical { index: usize, value: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("state is not Bell-diagonal (off-pattern deviation {deviation:e})")]
    NotBellDiagonal { deviation: f64 },

    #[error("invalid Hamiltonian: require epsA >= epsB >= 0, got epsA={eps_a}, epsB={eps_b}")]
    InvalidHamiltonian { eps_a: f64, eps_b: f64 },

    #[error("ordering branch {branch} does not apply to c=({c1}, {c2}, {c3})")]
    BranchNotApplicable { branch: String, c1: f64, c2: f64, c3: f64 },

    #[error("amplitude-damping spectrum ordering assumption violated")]
    OrderingAssumptionViolated,

    #[error("parameter {name} = {value} out of range [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
