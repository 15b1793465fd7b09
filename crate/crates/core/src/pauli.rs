//! Bloch vectors, Pauli operators, y-axis rotations, and the Pauli-basis
//! expansion of two-qubit operators.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{Error, Result};
use crate::linalg::{c, kron, ComplexMatrix, HERMITIAN_TOL};

/// Slack allowed on Bloch-vector norms and on `m_y` for great-circle states.
pub const BLOCH_TOL: f64 = 1e-12;

pub fn identity() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[1.0, -1.0])
}

/// `[σ_x, σ_y, σ_z]`
pub fn paulis() -> [ComplexMatrix; 3] {
    [sigma_x(), sigma_y(), sigma_z()]
}

/// `(sin β, cos β)`, exact at integer multiples of π/2.
pub fn sin_cos(beta: f64) -> (f64, f64) {
    let quarters = beta / FRAC_PI_2;
    let nearest = quarters.round();
    if (quarters - nearest).abs() < 1e-12 {
        match (nearest as i64).rem_euclid(4) {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        }
    } else {
        beta.sin_cos()
    }
}

/// Real Bloch vector of a qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const UP: Self = Self::new(0.0, 0.0, 1.0);
    pub const DOWN: Self = Self::new(0.0, 0.0, -1.0);
    pub const RIGHT: Self = Self::new(1.0, 0.0, 0.0);
    pub const LEFT: Self = Self::new(-1.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn max_abs_diff(&self, other: &BlochVector) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    pub fn is_on_great_circle(&self) -> bool {
        self.y.abs() <= BLOCH_TOL
    }

    /// Errors unless this is a pure state in the x-z plane.
    pub fn require_great_circle_pure(&self) -> Result<()> {
        if !self.is_on_great_circle() {
            return Err(Error::OffGreatCircle { m_y: self.y });
        }
        let norm = self.norm();
        if (norm - 1.0).abs() > BLOCH_TOL {
            return Err(Error::NotPure { norm });
        }
        Ok(())
    }
}

/// Position on the x-z great circle, measured from ↑ towards →.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatCircleAngle(f64);

impl GreatCircleAngle {
    /// Wraps `theta` into `[0, 2π)`.
    pub fn new(theta: f64) -> Self {
        let wrapped = theta.rem_euclid(TAU);
        Self(if wrapped >= TAU { 0.0 } else { wrapped })
    }

    pub fn radians(&self) -> f64 {
        self.0
    }

    /// `(sin θ, 0, cos θ)`
    pub fn bloch(&self) -> BlochVector {
        let (s, c) = sin_cos(self.0);
        BlochVector::new(s, 0.0, c)
    }

    /// Real amplitudes `(cos θ/2, sin θ/2)` of `|ψ(θ)⟩`.
    pub fn amplitudes(&self) -> (f64, f64) {
        let (s, c) = sin_cos(self.0 / 2.0);
        (c, s)
    }
}

/// `½(I + m·σ)`
pub fn bloch_to_density(m: &BlochVector) -> Result<ComplexMatrix> {
    let norm = m.norm();
    if norm > 1.0 + BLOCH_TOL {
        return Err(Error::UnphysicalBloch { norm });
    }
    Ok(ComplexMatrix::from_rows(&[
        [c(0.5 * (1.0 + m.z), 0.0), c(0.5 * m.x, -0.5 * m.y)],
        [c(0.5 * m.x, 0.5 * m.y), c(0.5 * (1.0 - m.z), 0.0)],
    ]))
}

/// `m_j = Tr(ρ σ_j)`
pub fn density_to_bloch(rho: &ComplexMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: rho.dim() });
    }
    let deviation = rho.hermiticity_error();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > HERMITIAN_TOL {
        return Err(Error::BadTrace { trace });
    }
    let off = (rho[(1, 0)] + rho[(0, 1)].conj()) * 0.5;
    Ok(BlochVector::new(
        2.0 * off.re,
        2.0 * off.im,
        (rho[(0, 0)] - rho[(1, 1)]).re,
    ))
}

/// `exp(-iβσ_y/2)`
pub fn rotation_unitary(beta: f64) -> ComplexMatrix {
    let (s, c) = sin_cos(beta / 2.0);
    ComplexMatrix::from_real_rows(&[[c, -s], [s, c]])
}

/// SO(3) rotation about y: `(m_x cos β + m_z sin β, m_y, -m_x sin β + m_z cos β)`.
pub fn rotate_bloch(m: &BlochVector, beta: f64) -> BlochVector {
    let (s, c) = sin_cos(beta);
    BlochVector::new(m.x * c + m.z * s, m.y, -m.x * s + m.z * c)
}

/// Coefficients of a two-qubit operator in the Pauli product basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliDecomposition {
    /// Coefficients of `σ_j ⊗ I`.
    pub a: [f64; 3],
    /// Coefficients of `I ⊗ σ_k`.
    pub b: [f64; 3],
    /// Coefficients of `σ_j ⊗ σ_k`.
    pub t: [[f64; 3]; 3],
}

impl PauliDecomposition {
    /// `¼[I⊗I + Σ a_j σ_j⊗I + Σ b_k I⊗σ_k + Σ t_jk σ_j⊗σ_k]`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let p = paulis();
        let i2 = identity();
        let mut acc = ComplexMatrix::identity(4);
        for j in 0..3 {
            acc = &acc + &kron(&p[j], &i2).scale_real(self.a[j]);
            acc = &acc + &kron(&i2, &p[j]).scale_real(self.b[j]);
            for k in 0..3 {
                acc = &acc + &kron(&p[j], &p[k]).scale_real(self.t[j][k]);
            }
        }
        acc.scale_real(0.25)
    }
}

/// Expands a Hermitian 4×4 operator in the Pauli product basis.
///
/// The identity coefficient is not returned; it equals `Tr ρ`.
pub fn pauli_decompose(rho: &ComplexMatrix) -> Result<PauliDecomposition> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho.dim() });
    }
    let deviation = rho.hermiticity_error();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let p = paulis();
    let i2 = identity();
    let expect = |op: &ComplexMatrix| (rho * op).trace().re;
    let mut out = PauliDecomposition { a: [0.0; 3], b: [0.0; 3], t: [[0.0; 3]; 3] };
    for j in 0..3 {
        out.a[j] = expect(&kron(&p[j], &i2));
        out.b[j] = expect(&kron(&i2, &p[j]));
        for k in 0..3 {
            out.t[j][k] = expect(&kron(&p[j], &p[k]));
        }
    }
    Ok(out)
}
