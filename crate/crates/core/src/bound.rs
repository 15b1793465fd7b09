//! Upper bound on the shrink factors of great-circle cloners from the
//! no-signalling requirement.
//!
//! The joint output of any covariant cloner for an input on the x-z great
//! circle has the Pauli form
//!
//! ```text
//! ρ_ob(m) = ¼[I⊗I + η₁ m·σ⊗I + η₂ I⊗m·σ + Σ t_jk σ_j⊗σ_k]
//! ```
//!
//! Covariance under y-rotations fixes how `t` transforms with `m`, and
//! equating the outputs for the two ensembles {↑, ↓} and {→, ←} forces
//! `t_xx = t_zz` and `t_xz = -t_zx`. Positivity of `ρ_ob(↑)` over the
//! remaining seven parameters then bounds `(η₁, η₂)` to the unit circle.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::Index;

use rand::Rng;

use crate::cloning::{clone, reduced_clones, CloneCoefficients};
use crate::error::{Error, Result};
use crate::linalg::{c, kron, min_eigenvalue, ComplexMatrix, PSD_TOL};
use crate::pauli::{self, pauli_decompose, rotate_bloch, rotation_unitary, sin_cos, BlochVector, GreatCircleAngle};
use crate::simplex::{self, SimplexOptions};

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;

/// Tolerance on `t_xx = t_zz` and `t_xz = -t_zx`.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// Coefficients `t_jk` of `σ_j ⊗ σ_k` in a two-qubit state, indexed by [`X`], [`Y`], [`Z`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CorrelationTensor {
    entries: [[f64; 3]; 3],
}

impl CorrelationTensor {
    pub const fn new(entries: [[f64; 3]; 3]) -> Self {
        Self { entries }
    }

    pub const fn zero() -> Self {
        Self::new([[0.0; 3]; 3])
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = *self;
        out.entries.iter_mut().flatten().for_each(|v| *v *= s);
        out
    }

    pub fn max_abs_diff(&self, other: &CorrelationTensor) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Every entry lies in `[-1, 1]`, as required of a physical state.
    pub fn in_physical_range(&self) -> bool {
        self.entries.iter().flatten().all(|v| v.abs() <= 1.0 + 1e-12)
    }

    /// `(t_xx - t_zz, t_xz + t_zx)`, both zero for a no-signalling tensor.
    pub fn constraint_defects(&self) -> (f64, f64) {
        (self[(X, X)] - self[(Z, Z)], self[(X, Z)] + self[(Z, X)])
    }

    pub fn satisfies_no_signalling(&self) -> bool {
        let (a, b) = self.constraint_defects();
        a.abs() <= CONSTRAINT_TOL && b.abs() <= CONSTRAINT_TOL
    }

    /// The seven parameters left free by the no-signalling constraints.
    pub fn free_parameters(&self) -> FreeCorrelations {
        let t = &self.entries;
        FreeCorrelations {
            xx: t[X][X],
            xz: t[X][Z],
            yy: t[Y][Y],
            xy: t[X][Y],
            yx: t[Y][X],
            yz: t[Y][Z],
            zy: t[Z][Y],
        }
    }
}

impl Index<(usize, usize)> for CorrelationTensor {
    type Output = f64;

    fn index(&self, (j, k): (usize, usize)) -> &f64 {
        &self.entries[j][k]
    }
}

/// Reduction factors `(η₁, η₂)` of the two clones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShrinkPair {
    pub eta1: f64,
    pub eta2: f64,
}

impl ShrinkPair {
    /// Both factors must lie in `[0, 1]`.
    pub fn new(eta1: f64, eta2: f64) -> Result<Self> {
        let ok = |v: f64| (0.0..=1.0).contains(&v);
        if !(ok(eta1) && ok(eta2)) {
            return Err(Error::ShrinkOutOfRange { eta1, eta2 });
        }
        Ok(Self { eta1, eta2 })
    }

    /// Point at angle `phi` on the quarter circle `η₁² + η₂² = 1`.
    pub fn on_circle(phi: f64) -> Self {
        let (s, c) = sin_cos(phi);
        Self { eta1: c.clamp(0.0, 1.0), eta2: s.clamp(0.0, 1.0) }
    }

    pub fn radius_squared(&self) -> f64 {
        self.eta1 * self.eta1 + self.eta2 * self.eta2
    }

    pub fn radius(&self) -> f64 {
        self.radius_squared().sqrt()
    }
}

/// The free parameters of a no-signalling correlation tensor:
/// `t_xx (= t_zz)`, `t_xz (= -t_zx)`, `t_yy`, `t_xy`, `t_yx`, `t_yz`, `t_zy`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FreeCorrelations {
    pub xx: f64,
    pub xz: f64,
    pub yy: f64,
    pub xy: f64,
    pub yx: f64,
    pub yz: f64,
    pub zy: f64,
}

impl FreeCorrelations {
    const NAMES: [&'static str; 7] = ["t_xx", "t_xz", "t_yy", "t_xy", "t_yx", "t_yz", "t_zy"];

    pub fn to_array(&self) -> [f64; 7] {
        [self.xx, self.xz, self.yy, self.xy, self.yx, self.yz, self.zy]
    }

    pub fn from_array(p: [f64; 7]) -> Self {
        Self { xx: p[0], xz: p[1], yy: p[2], xy: p[3], yx: p[4], yz: p[5], zy: p[6] }
    }

    /// Builds the tensor without range checks.
    fn tensor_unchecked(&self) -> CorrelationTensor {
        CorrelationTensor::new([
            [self.xx, self.xy, self.xz],
            [self.yx, self.yy, self.yz],
            [-self.xz, self.zy, self.xx],
        ])
    }
}

/// Correlation tensor satisfying `t_xx = t_zz`, `t_xz = -t_zx` by construction.
pub fn constrain_tensor(free: &FreeCorrelations) -> Result<CorrelationTensor> {
    for (name, value) in FreeCorrelations::NAMES.iter().zip(free.to_array()) {
        if !(-1.0..=1.0).contains(&value) {
            return Err(Error::ParameterOutOfRange { name, value });
        }
    }
    Ok(free.tensor_unchecked())
}

/// Joint two-clone state in the general Pauli form for input `m`.
///
/// Not necessarily positive: that is exactly what the bound tests.
pub fn build_joint_output(m: &BlochVector, etas: ShrinkPair, t: &CorrelationTensor) -> Result<ComplexMatrix> {
    m.require_great_circle_pure()?;
    let p = pauli::paulis();
    let i2 = pauli::identity();
    let m_dot_sigma = &p[X].scale_real(m.x) + &p[Z].scale_real(m.z);
    let mut acc = ComplexMatrix::identity(4);
    acc = &acc + &kron(&m_dot_sigma, &i2).scale_real(etas.eta1);
    acc = &acc + &kron(&i2, &m_dot_sigma).scale_real(etas.eta2);
    for j in 0..3 {
        for k in 0..3 {
            if t[(j, k)] != 0.0 {
                acc = &acc + &kron(&p[j], &p[k]).scale_real(t[(j, k)]);
            }
        }
    }
    Ok(acc.scale_real(0.25))
}

/// How `t` must transform when the input is rotated by `beta` about y.
pub fn rotate_correlations(t: &CorrelationTensor, beta: f64) -> CorrelationTensor {
    let (s, c) = sin_cos(beta);
    let (s2, c2, sc) = (s * s, c * c, s * c);
    let [[xx, xy, xz], [yx, yy, yz], [zx, zy, zz]] = t.entries;
    CorrelationTensor::new([
        [
            c2 * xx + s2 * zz + sc * (xz + zx),
            c * xy + s * zy,
            sc * (zz - xx) + c2 * xz - s2 * zx,
        ],
        [c * yx + s * yz, yy, -s * yx + c * yz],
        [
            sc * (zz - xx) - s2 * xz + c2 * zx,
            -s * xy + c * zy,
            -sc * (xz + zx) + c2 * zz + s2 * xx,
        ],
    ])
}

/// Max entrywise gap between the Pauli-form output at the rotated input
/// (with rotated correlations) and the rotated Pauli-form output.
pub fn covariance_residual(m: &BlochVector, etas: ShrinkPair, t: &CorrelationTensor, beta: f64) -> Result<f64> {
    let direct = build_joint_output(&rotate_bloch(m, beta), etas, &rotate_correlations(t, beta))?;
    let u = rotation_unitary(beta);
    let uu = kron(&u, &u);
    let conjugated = build_joint_output(m, etas, t)?.conjugate_by(&uu);
    Ok(direct.max_abs_diff(&conjugated))
}

/// `‖[ρ(↑) + ρ(↓)] − [ρ(→) + ρ(←)]‖_max` with every output built from `t` by covariance.
pub fn no_signalling_residual(etas: ShrinkPair, t: &CorrelationTensor) -> f64 {
    let output = |beta: f64| {
        build_joint_output(&rotate_bloch(&BlochVector::UP, beta), etas, &rotate_correlations(t, beta))
            .expect("cardinal inputs are pure great-circle states")
    };
    let poles = &output(0.0) + &output(PI);
    let equator = &output(FRAC_PI_2) + &output(3.0 * FRAC_PI_2);
    poles.max_abs_diff(&equator)
}

/// Explicit entrywise form of `ρ_ob(↑)` for a no-signalling tensor.
pub fn positivity_matrix_up(etas: ShrinkPair, t: &CorrelationTensor) -> Result<ComplexMatrix> {
    let (xx_zz, xz_zx) = t.constraint_defects();
    if xx_zz.abs() > CONSTRAINT_TOL || xz_zx.abs() > CONSTRAINT_TOL {
        return Err(Error::ConstraintViolation { xx_zz, xz_zx });
    }
    Ok(positivity_matrix_from_free(etas, &t.free_parameters()))
}

fn positivity_matrix_from_free(etas: ShrinkPair, f: &FreeCorrelations) -> ComplexMatrix {
    let (e1, e2) = (etas.eta1, etas.eta2);
    let FreeCorrelations { xx, xz, yy, xy, yx, yz, zy } = *f;
    ComplexMatrix::from_rows(&[
        [c(1.0 + e1 + e2 + xx, 0.0), c(-xz, -zy), c(xz, -yz), c(xx - yy, -(xy + yx))],
        [c(-xz, zy), c(1.0 + e1 - e2 - xx, 0.0), c(xx + yy, xy - yx), c(-xz, yz)],
        [c(xz, yz), c(xx + yy, -(xy - yx)), c(1.0 - e1 + e2 - xx, 0.0), c(xz, zy)],
        [c(xx - yy, xy + yx), c(-xz, -yz), c(xz, -zy), c(1.0 - e1 - e2 + xx, 0.0)],
    ])
    .scale_real(0.25)
}

/// `1 − t_yy² − t_xy² − t_yx² − t_yz² − t_zy²`
pub fn bound_rhs(t: &CorrelationTensor) -> f64 {
    1.0 - [(Y, Y), (X, Y), (Y, X), (Y, Z), (Z, Y)]
        .iter()
        .map(|&jk| t[jk] * t[jk])
        .sum::<f64>()
}

/// Parameters of the positivity search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Total eigensolves per feasibility call, split across restarts.
    pub budget: usize,
    pub restarts: usize,
    pub psd_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: 5000, restarts: 20, psd_tol: PSD_TOL }
    }
}

/// Outcome of a search for a positive `ρ_ob(↑)` at fixed `(η₁, η₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub best_min_eigenvalue: f64,
    pub witness: CorrelationTensor,
    pub evaluations: usize,
}

/// Correlations of the explicit cloner, pushed to the circle and mixed with
/// white noise back down to `etas`.
///
/// For `r = |η| ≤ 1` this is `r · t_machine(η / r)`, which is a convex mix of
/// a valid state and `I/4`, so `ρ_ob(↑)` is positive with `λ_min ≥ (1 − r)/4`.
pub fn machine_witness(etas: ShrinkPair) -> Result<CorrelationTensor> {
    let r = etas.radius();
    if r == 0.0 {
        return Ok(CorrelationTensor::zero());
    }
    let on_circle = ShrinkPair::new((etas.eta1 / r).min(1.0), (etas.eta2 / r).min(1.0))?;
    let out = clone(GreatCircleAngle::new(0.0), &CloneCoefficients::new(on_circle)?);
    let (_, _, joint) = reduced_clones(&out);
    let t = CorrelationTensor::new(pauli_decompose(&joint)?.t).scaled(r);
    // symmetrize away rounding so the constraints hold exactly
    let mut free = t.free_parameters();
    free.xx = 0.5 * (t[(X, X)] + t[(Z, Z)]);
    free.xz = 0.5 * (t[(X, Z)] - t[(Z, X)]);
    Ok(free.tensor_unchecked())
}

fn objective(etas: ShrinkPair, x: &[f64]) -> f64 {
    let mut clamped = [0.0; 7];
    let mut outside = 0.0;
    for (dst, &v) in clamped.iter_mut().zip(x) {
        *dst = v.clamp(-1.0, 1.0);
        outside += (v - *dst).abs();
    }
    let m = positivity_matrix_from_free(etas, &FreeCorrelations::from_array(clamped));
    min_eigenvalue(&m).expect("positivity matrix is Hermitian by construction") - outside
}

/// Maximizes `λ_min(ρ_ob(↑))` over the seven free correlation parameters.
///
/// Restarts: one from `t = 0`, one from [`machine_witness`] when
/// `η₁² + η₂² ≤ 1`, the rest uniform in `[-1, 1]⁷`.
pub fn feasibility<R: Rng + ?Sized>(etas: ShrinkPair, opts: &SearchOptions, rng: &mut R) -> FeasibilityReport {
    if etas.eta1 == 0.0 && etas.eta2 == 0.0 {
        return FeasibilityReport {
            feasible: true,
            best_min_eigenvalue: 0.25,
            witness: CorrelationTensor::zero(),
            evaluations: 0,
        };
    }

    let restarts = opts.restarts.max(1);
    let mut starts: Vec<[f64; 7]> = vec![[0.0; 7]];
    if etas.radius_squared() <= 1.0 + 1e-12 {
        if let Ok(w) = machine_witness(etas) {
            starts.push(w.free_parameters().to_array());
        }
    }
    while starts.len() < restarts {
        let mut p = [0.0; 7];
        p.iter_mut().for_each(|v| *v = rng.gen_range(-1.0..=1.0));
        starts.push(p);
    }

    let per_start = (opts.budget / restarts).max(1);
    let mut best = (f64::NEG_INFINITY, [0.0; 7]);
    let mut evaluations = 0;
    for start in &starts {
        let remaining = opts.budget.saturating_sub(evaluations);
        if remaining == 0 {
            break;
        }
        let run = simplex::maximize(
            |x| objective(etas, x),
            start,
            &SimplexOptions { max_evaluations: per_start.min(remaining), ..Default::default() },
        );
        evaluations += run.evaluations;
        if run.best_value > best.0 {
            let mut p = [0.0; 7];
            for (dst, v) in p.iter_mut().zip(&run.best_point) {
                *dst = v.clamp(-1.0, 1.0);
            }
            // re-evaluate at the clamped point so the witness reproduces the value
            let value = objective(etas, &p);
            best = (value, p);
        }
    }

    FeasibilityReport {
        feasible: best.0 >= -opts.psd_tol,
        best_min_eigenvalue: best.0,
        witness: FreeCorrelations::from_array(best.1).tensor_unchecked(),
        evaluations,
    }
}

const MAX_BISECTIONS: usize = 20;

/// Largest `r` such that `(r cos φ, r sin φ)` passes [`feasibility`].
///
/// The search runs along the ray inside the unit square. The far end of the
/// ray is tried first; otherwise bisection stops when the bracket is below
/// `radius_tol` (or after 20 halvings) and returns its midpoint.
pub fn max_radius<R: Rng + ?Sized>(phi: f64, radius_tol: f64, opts: &SearchOptions, rng: &mut R) -> f64 {
    let (s, c) = sin_cos(phi);
    let (s, c) = (s.clamp(0.0, 1.0), c.clamp(0.0, 1.0));
    let at = |r: f64| ShrinkPair { eta1: (r * c).min(1.0), eta2: (r * s).min(1.0) };
    let r_max = 1.0 / c.max(s);

    if feasibility(at(r_max), opts, rng).feasible {
        return r_max;
    }
    let (mut lo, mut hi) = (0.0, r_max);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= radius_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if feasibility(at(mid), opts, rng).feasible {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
