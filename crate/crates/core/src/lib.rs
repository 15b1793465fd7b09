//! Optimal asymmetric 1 → 2 cloning of qubits on the x-z great circle.
//!
//! * [`linalg`]: dense complex matrices up to 8×8, partial traces, Jacobi eigensolver.
//! * [`pauli`]: Bloch vectors, Pauli operators, y-rotations, two-qubit Pauli expansion.
//! * [`bound`]: covariant two-clone outputs, the no-signalling constraint and the
//!   positivity search that recovers the circle `η₁² + η₂² = 1`.
//! * [`cloning`]: the explicit cloner attaining that circle, and its diagnostics.

pub mod bound;
pub mod cloning;
pub mod error;
pub mod linalg;
pub mod pauli;
pub mod simplex;

pub use bound::{
    bound_rhs, build_joint_output, constrain_tensor, covariance_residual, feasibility, max_radius,
    no_signalling_residual, positivity_matrix_up, rotate_correlations, CorrelationTensor, FeasibilityReport,
    FreeCorrelations, SearchOptions, ShrinkPair,
};
pub use cloning::{
    clone, clone_report, coefficients, covariance_check_machine, isometry_check, isotropy_scan, reduced_clones,
    CloneCoefficients, CloneReport, MachineOutput,
};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexVector};
pub use pauli::{BlochVector, GreatCircleAngle, PauliDecomposition};
