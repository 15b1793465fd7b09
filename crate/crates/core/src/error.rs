use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bad factorization: subsystem dims {dims:?} do not multiply to {dim}")]
    BadFactorization { dims: Vec<usize>, dim: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("unphysical Bloch vector (norm {norm})")]
    UnphysicalBloch { norm: f64 },

    #[error("Bloch vector is not a pure state (norm {norm})")]
    NotPure { norm: f64 },

    #[error("off great circle (m_y = {m_y:e})")]
    OffGreatCircle { m_y: f64 },

    #[error("density matrix trace {trace} is not 1")]
    BadTrace { trace: f64 },

    #[error("shrink factors ({eta1}, {eta2}) outside the unit square")]
    ShrinkOutOfRange { eta1: f64, eta2: f64 },

    #[error("correlation parameter {name} = {value} outside [-1, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("correlation tensor violates no-signalling constraints (t_xx - t_zz = {xx_zz:e}, t_xz + t_zx = {xz_zx:e})")]
    ConstraintViolation { xx_zz: f64, xz_zx: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
