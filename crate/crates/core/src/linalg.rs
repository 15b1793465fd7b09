//! Small dense complex linear algebra.
//!
//! Everything here is sized for a handful of qubits (dimension 2, 4 or 8).
//! Tensor-product index convention: the left factor is the most significant,
//! so for three qubits `o ⊗ b ⊗ M` the basis index is `4·o + 2·b + M`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum tolerated `|M[j][k] - conj(M[k][j])|` for a matrix treated as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Default tolerance on the smallest eigenvalue for positive semi-definiteness.
pub const PSD_TOL: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 64;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Square complex matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = c(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = c(v, 0.0);
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows are not square.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), dim, "matrix rows must have length {dim}");
            data.extend_from_slice(row);
        }
        Self { dim, data }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), dim, "matrix rows must have length {dim}");
            data.extend(row.iter().map(|&x| c(x, 0.0)));
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(c(factor, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `U · self · U†`
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        &(u * self) * &u.adjoint()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max_jk |M[j][k] - conj(M[k][j])|`
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(M + M†) / 2`
    pub fn symmetrized(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        assert_eq!(self.dim, v.dim(), "dimension mismatch");
        let n = self.dim;
        let entries = (0..n)
            .map(|i| (0..n).map(|j| self[(i, j)] * v[j]).sum())
            .collect();
        ComplexVector::new(entries)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[index] = c(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &ComplexVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Rank-one projector `|v⟩⟨v|`.
    pub fn outer_self(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.entries[i] * self.entries[j].conj();
            }
        }
        m
    }

    pub fn kron(&self, other: &ComplexVector) -> ComplexVector {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                out.push(a * b);
            }
        }
        ComplexVector::new(out)
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.entries[i]
    }
}

impl IndexMut<usize> for ComplexVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.entries[i]
    }
}

/// Kronecker product `a ⊗ b`, with `a` as the most significant factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(na * nb);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

fn check_factorization(dim: usize, dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.iter().product::<usize>() != dim {
        return Err(Error::BadFactorization {
            dims: dims.to_vec(),
            dim,
        });
    }
    Ok(())
}

/// Splits a flat basis index into per-subsystem digits (most significant first).
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
}

fn compose(digits: &[usize], dims: &[usize], which: &[usize]) -> usize {
    which.iter().fold(0, |acc, &s| acc * dims[s] + digits[s])
}

/// Reduced matrix on the subsystems listed in `keep`, tracing out all others.
///
/// Kept subsystems appear in their original (ascending) order in the result.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    check_factorization(rho.dim(), dims)?;
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.iter().any(|&s| s >= dims.len()) {
        return Err(Error::BadFactorization {
            dims: dims.to_vec(),
            dim: rho.dim(),
        });
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|s| !kept.contains(s)).collect();
    let out_dim: usize = kept.iter().map(|&s| dims[s]).product();

    let n = rho.dim();
    let mut di = vec![0; dims.len()];
    let mut dj = vec![0; dims.len()];
    let mut out = ComplexMatrix::zeros(out_dim);
    for i in 0..n {
        digits(i, dims, &mut di);
        let ti = compose(&di, dims, &traced);
        let ki = compose(&di, dims, &kept);
        for j in 0..n {
            digits(j, dims, &mut dj);
            if compose(&dj, dims, &traced) != ti {
                continue;
            }
            out[(ki, compose(&dj, dims, &kept))] += rho[(i, j)];
        }
    }
    Ok(out)
}

/// Transpose on a single subsystem.
pub fn partial_transpose(rho: &ComplexMatrix, dims: &[usize], subsystem: usize) -> Result<ComplexMatrix> {
    check_factorization(rho.dim(), dims)?;
    if subsystem >= dims.len() {
        return Err(Error::BadFactorization {
            dims: dims.to_vec(),
            dim: rho.dim(),
        });
    }
    let n = rho.dim();
    let all: Vec<usize> = (0..dims.len()).collect();
    let mut di = vec![0; dims.len()];
    let mut dj = vec![0; dims.len()];
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            digits(i, dims, &mut di);
            digits(j, dims, &mut dj);
            std::mem::swap(&mut di[subsystem], &mut dj[subsystem]);
            out[(compose(&di, dims, &all), compose(&dj, dims, &all))] = rho[(i, j)];
        }
    }
    Ok(out)
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> ComplexVector {
        let n = self.vectors.dim();
        ComplexVector::new((0..n).map(|i| self.vectors[(i, k)]).collect())
    }
}

fn require_hermitian(m: &ComplexMatrix) -> Result<()> {
    let deviation = m.hermiticity_error();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Cyclic complex Jacobi on `(M + M†)/2`.
///
/// Each pivot `(p, q)` first removes the phase of `H[p][q]` with a diagonal
/// unitary and then applies a real Givens rotation to the resulting real
/// symmetric 2×2 block.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    require_hermitian(m)?;
    let n = m.dim();
    let mut h = m.symmetrized();
    let mut v = ComplexMatrix::identity(n);

    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| h[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate_pivot(&mut h, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| h[(a, a)].re.total_cmp(&h[(b, b)].re));
    let values = order.iter().map(|&k| h[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, col)] = v[(i, k)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

fn rotate_pivot(h: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let hpq = h[(p, q)];
    let mag = hpq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = hpq / mag;
    let (a, b) = (h[(p, p)].re, h[(q, q)].re);
    let theta = (b - a) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;
    let n = h.dim();

    // G = diag phase on q, then real rotation:
    // G[p][p] = c, G[p][q] = s, G[q][p] = -s·e^{-iφ}, G[q][q] = c·e^{-iφ}
    let gqp = -phase.conj() * sn;
    let gqq = phase.conj() * cs;

    // H ← H·G, V ← V·G (columns p, q)
    for i in 0..n {
        let (hp, hq) = (h[(i, p)], h[(i, q)]);
        h[(i, p)] = hp * cs + hq * gqp;
        h[(i, q)] = hp * sn + hq * gqq;
        let (vp, vq) = (v[(i, p)], v[(i, q)]);
        v[(i, p)] = vp * cs + vq * gqp;
        v[(i, q)] = vp * sn + vq * gqq;
    }
    // H ← G†·H (rows p, q)
    for j in 0..n {
        let (hp, hq) = (h[(p, j)], h[(q, j)]);
        h[(p, j)] = hp * cs + hq * gqp.conj();
        h[(q, j)] = hp * sn + hq * gqq.conj();
    }
    h[(p, q)] = c(0.0, 0.0);
    h[(q, p)] = c(0.0, 0.0);
    h[(p, p)] = c(h[(p, p)].re, 0.0);
    h[(q, q)] = c(h[(q, q)].re, 0.0);
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?[0])
}

/// Outcome of a positive semi-definiteness test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdCheck {
    pub psd: bool,
    pub min_eigenvalue: f64,
}

/// `psd` is true iff the smallest eigenvalue is at least `-tol`.
pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<PsdCheck> {
    let min_eigenvalue = min_eigenvalue(m)?;
    Ok(PsdCheck {
        psd: min_eigenvalue >= -tol,
        min_eigenvalue,
    })
}
