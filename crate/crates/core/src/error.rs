use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |M - M^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace}, expected 1")]
    Trace { trace: f64 },

    #[error("negative eigenvalue {value:e} below tolerance")]
    NotPositive { value: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate parameters: q = 1 with nu = 0 has no unique limit")]
    DegenerateLimit,

    #[error("numerical consistency error: divergence radicand {radicand:e} is negative")]
    NumericalConsistency { radicand: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
}
