//! The explicit asymmetric cloner for great-circle qubits.
//!
//! On the input qubit `o` (blank `b` and machine `M` fixed) the map is
//!
//! ```text
//! |0⟩ ↦ (A|00⟩ + D|11⟩)|0⟩ + (B|01⟩ + C|10⟩)|1⟩
//! |1⟩ ↦ (A|11⟩ + D|00⟩)|1⟩ + (B|10⟩ + C|01⟩)|0⟩
//! ```
//!
//! with `A, B, C, D = ½√((1 ± η₁)(1 ± η₂))`. Only this 2 → 8 isometry is
//! modelled; no unitary extension to the full three-qubit space is chosen.

use std::f64::consts::TAU;

use crate::bound::{CorrelationTensor, ShrinkPair};
use crate::error::Result;
use crate::linalg::{c, kron, min_eigenvalue, partial_trace, partial_transpose, ComplexMatrix, ComplexVector};
use crate::pauli::{density_to_bloch, pauli_decompose, rotation_unitary, GreatCircleAngle};

/// Subsystem dimensions of `o ⊗ b ⊗ M`.
pub const OUTPUT_DIMS: [usize; 3] = [2, 2, 2];

/// Basis index of `|o b M⟩`.
#[inline]
pub const fn basis_index(o: usize, b: usize, m: usize) -> usize {
    4 * o + 2 * b + m
}

/// Amplitudes `(A, B, C, D)` of the cloning isometry together with the
/// shrink factors that generated them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloneCoefficients {
    pub a_coef: f64,
    pub b_coef: f64,
    pub c_coef: f64,
    pub d_coef: f64,
    pub etas: ShrinkPair,
}

impl CloneCoefficients {
    pub fn new(etas: ShrinkPair) -> Result<Self> {
        coefficients(etas)
    }

    pub fn norm_squared(&self) -> f64 {
        [self.a_coef, self.b_coef, self.c_coef, self.d_coef]
            .iter()
            .map(|v| v * v)
            .sum()
    }

    /// Images of `|0⟩_o` and `|1⟩_o`.
    pub fn images(&self) -> (ComplexVector, ComplexVector) {
        let (a, b, cc, d) = (self.a_coef, self.b_coef, self.c_coef, self.d_coef);
        let mut zero = ComplexVector::zeros(8);
        zero[basis_index(0, 0, 0)] = c(a, 0.0);
        zero[basis_index(1, 1, 0)] = c(d, 0.0);
        zero[basis_index(0, 1, 1)] = c(b, 0.0);
        zero[basis_index(1, 0, 1)] = c(cc, 0.0);

        let mut one = ComplexVector::zeros(8);
        one[basis_index(1, 1, 1)] = c(a, 0.0);
        one[basis_index(0, 0, 1)] = c(d, 0.0);
        one[basis_index(1, 0, 0)] = c(b, 0.0);
        one[basis_index(0, 1, 0)] = c(cc, 0.0);
        (zero, one)
    }
}

/// `A = ½√((1+η₁)(1+η₂))`, `B = ½√((1+η₁)(1−η₂))`,
/// `C = ½√((1−η₁)(1+η₂))`, `D = ½√((1−η₁)(1−η₂))`.
pub fn coefficients(etas: ShrinkPair) -> Result<CloneCoefficients> {
    let ShrinkPair { eta1, eta2 } = ShrinkPair::new(etas.eta1, etas.eta2)?;
    let half_root = |x: f64, y: f64| 0.5 * (x * y).sqrt();
    Ok(CloneCoefficients {
        a_coef: half_root(1.0 + eta1, 1.0 + eta2),
        b_coef: half_root(1.0 + eta1, 1.0 - eta2),
        c_coef: half_root(1.0 - eta1, 1.0 + eta2),
        d_coef: half_root(1.0 - eta1, 1.0 - eta2),
        etas,
    })
}

/// Output of the cloner for one great-circle input.
#[derive(Debug, Clone, PartialEq)]
pub struct MachineOutput {
    /// Pure state on `o ⊗ b ⊗ M`, index `4o + 2b + M`.
    pub state: ComplexVector,
    pub input_theta: GreatCircleAngle,
}

/// Applies the isometry to `cos(θ/2)|0⟩ + sin(θ/2)|1⟩`.
pub fn clone(theta: GreatCircleAngle, coeffs: &CloneCoefficients) -> MachineOutput {
    let (alpha, beta) = theta.amplitudes();
    let (zero, one) = coeffs.images();
    let state = zero
        .as_slice()
        .iter()
        .zip(one.as_slice())
        .map(|(z, o)| z * alpha + o * beta)
        .collect();
    MachineOutput {
        state: ComplexVector::new(state),
        input_theta: theta,
    }
}

/// Largest deviation of the Gram matrix of the two basis images from `I₂`.
pub fn isometry_check(coeffs: &CloneCoefficients) -> f64 {
    let (zero, one) = coeffs.images();
    let gram = [
        zero.inner(&zero) - 1.0,
        zero.inner(&one),
        one.inner(&zero),
        one.inner(&one) - 1.0,
    ];
    gram.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `(ρ_o, ρ_b, ρ_ob)` from the three-party output state.
pub fn reduced_clones(out: &MachineOutput) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let rho = out.state.outer_self();
    let trace = |keep: &[usize]| partial_trace(&rho, &OUTPUT_DIMS, keep).expect("8 = 2·2·2");
    (trace(&[0]), trace(&[1]), trace(&[0, 1]))
}

/// Diagnostics for one cloning run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloneReport {
    pub theta: GreatCircleAngle,
    pub etas: ShrinkPair,
    /// Best isotropic shrink `2⟨ψ|ρ_o|ψ⟩ − 1` of clone `o`.
    pub shrink_o: f64,
    pub shrink_b: f64,
    pub shrink_o_z: f64,
    pub shrink_o_x: f64,
    pub shrink_b_z: f64,
    pub shrink_b_x: f64,
    pub fidelity_o: f64,
    pub fidelity_b: f64,
    pub isotropy_residual_o: f64,
    pub isotropy_residual_b: f64,
    pub correlation: CorrelationTensor,
    /// Smallest eigenvalue of `ρ_ob` transposed on `b`.
    pub ppt_min_eigenvalue: f64,
}

impl CloneReport {
    pub fn is_on_circle(&self) -> bool {
        (self.etas.radius_squared() - 1.0).abs() <= 1e-8
    }
}

/// Below this `|m_axis|` the axis shrink is read from an axis-aligned probe.
const AXIS_RATIO_FLOOR: f64 = 0.1;

struct CloneFit {
    fidelity: f64,
    shrink: f64,
    residual: f64,
}

fn fit_isotropic(rho: &ComplexMatrix, psi: &ComplexVector) -> CloneFit {
    let fidelity = psi.inner(&rho.apply(psi)).re;
    let shrink = 2.0 * fidelity - 1.0;
    let model = &psi.outer_self().scale_real(shrink) + &ComplexMatrix::identity(2).scale_real(0.5 * (1.0 - shrink));
    CloneFit {
        fidelity,
        shrink,
        residual: rho.max_abs_diff(&model),
    }
}

fn clone_states(theta: GreatCircleAngle, coeffs: &CloneCoefficients) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    reduced_clones(&clone(theta, coeffs))
}

/// Runs the cloner on `|ψ(θ)⟩` and measures both clones and their joint state.
pub fn clone_report(theta: GreatCircleAngle, etas: ShrinkPair) -> Result<CloneReport> {
    let coeffs = coefficients(etas)?;
    let (rho_o, rho_b, rho_ob) = clone_states(theta, &coeffs);
    let (alpha, beta) = theta.amplitudes();
    let psi = ComplexVector::new(vec![c(alpha, 0.0), c(beta, 0.0)]);
    let fit_o = fit_isotropic(&rho_o, &psi);
    let fit_b = fit_isotropic(&rho_b, &psi);

    let m = theta.bloch();
    let n_o = density_to_bloch(&rho_o)?;
    let n_b = density_to_bloch(&rho_b)?;
    let (mut shrink_o_z, mut shrink_b_z) = (n_o.z / m.z, n_b.z / m.z);
    let (mut shrink_o_x, mut shrink_b_x) = (n_o.x / m.x, n_b.x / m.x);
    if m.z.abs() <= AXIS_RATIO_FLOOR {
        let (po, pb, _) = clone_states(GreatCircleAngle::new(0.0), &coeffs);
        shrink_o_z = density_to_bloch(&po)?.z;
        shrink_b_z = density_to_bloch(&pb)?.z;
    }
    if m.x.abs() <= AXIS_RATIO_FLOOR {
        let (po, pb, _) = clone_states(GreatCircleAngle::new(std::f64::consts::FRAC_PI_2), &coeffs);
        shrink_o_x = density_to_bloch(&po)?.x;
        shrink_b_x = density_to_bloch(&pb)?.x;
    }

    let correlation = CorrelationTensor::new(pauli_decompose(&rho_ob)?.t);
    let transposed = partial_transpose(&rho_ob, &[2, 2], 1)?;
    let ppt_min_eigenvalue = min_eigenvalue(&transposed)?;

    Ok(CloneReport {
        theta,
        etas,
        shrink_o: fit_o.shrink,
        shrink_b: fit_b.shrink,
        shrink_o_z,
        shrink_o_x,
        shrink_b_z,
        shrink_b_x,
        fidelity_o: fit_o.fidelity,
        fidelity_b: fit_b.fidelity,
        isotropy_residual_o: fit_o.residual,
        isotropy_residual_b: fit_b.residual,
        correlation,
        ppt_min_eigenvalue,
    })
}

/// Worst isotropy residual of either clone over `samples` equally spaced
/// inputs `θ_k = 2πk / samples`.
pub fn isotropy_scan(etas: ShrinkPair, samples: usize) -> Result<f64> {
    let samples = samples.max(2);
    let mut worst = 0.0_f64;
    for k in 0..samples {
        let theta = GreatCircleAngle::new(TAU * k as f64 / samples as f64);
        let r = clone_report(theta, etas)?;
        worst = worst.max(r.isotropy_residual_o).max(r.isotropy_residual_b);
    }
    Ok(worst)
}

/// `‖ρ_ob(θ + β) − (U⊗U) ρ_ob(θ) (U⊗U)†‖_max` with `U = exp(−iβσ_y/2)`.
pub fn covariance_check_machine(etas: ShrinkPair, theta: GreatCircleAngle, beta: f64) -> Result<f64> {
    let coeffs = coefficients(etas)?;
    let (_, _, before) = clone_states(theta, &coeffs);
    let (_, _, after) = clone_states(GreatCircleAngle::new(theta.radians() + beta), &coeffs);
    let u = rotation_unitary(beta);
    Ok(after.max_abs_diff(&before.conjugate_by(&kron(&u, &u))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    use crate::pauli::{bloch_to_density, BlochVector};

    fn pair(e1: f64, e2: f64) -> ShrinkPair {
        ShrinkPair::new(e1, e2).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let k = coefficients(pair(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).unwrap();
        // ½(1 + 1/√2), ½·(1/√2), ½(1 − 1/√2)
        assert!((k.a_coef - 0.853_553_390_593_273_8).abs() < 1e-15);
        assert!((k.b_coef - 0.353_553_390_593_273_8).abs() < 1e-15);
        assert!((k.c_coef - 0.353_553_390_593_273_8).abs() < 1e-15);
        assert!((k.d_coef - 0.146_446_609_406_726_2).abs() < 1e-15);
        assert!((k.norm_squared() - 1.0).abs() < 1e-15);

        let k = coefficients(pair(1.0, 1.0)).unwrap();
        assert_eq!((k.a_coef, k.b_coef, k.c_coef, k.d_coef), (1.0, 0.0, 0.0, 0.0));

        let k = coefficients(pair(1.0, 0.0)).unwrap();
        assert!((k.a_coef - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((k.b_coef - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!((k.c_coef, k.d_coef), (0.0, 0.0));
    }

    #[test]
    fn coefficients_reject_out_of_range() {
        let bad = ShrinkPair { eta1: 1.2, eta2: 0.0 };
        assert!(coefficients(bad).is_err());
    }

    #[test]
    fn coefficient_invariants_on_grid() {
        for i in 0..=20 {
            for j in 0..=20 {
                let k = coefficients(pair(i as f64 / 20.0, j as f64 / 20.0)).unwrap();
                assert!((k.norm_squared() - 1.0).abs() < 1e-12);
                assert!((k.a_coef * k.d_coef - k.b_coef * k.c_coef).abs() < 1e-12);
                assert!(k.a_coef >= k.b_coef && k.b_coef >= k.d_coef);
                assert!(k.a_coef >= k.c_coef && k.c_coef >= k.d_coef && k.d_coef >= 0.0);
            }
        }
    }

    #[test]
    fn clone_examples() {
        let out = clone(GreatCircleAngle::new(0.0), &coefficients(pair(1.0, 1.0)).unwrap());
        assert_eq!(out.state, ComplexVector::basis(8, 0));

        let k = coefficients(pair(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).unwrap();
        let out = clone(GreatCircleAngle::new(0.0), &k);
        let s = out.state.as_slice();
        assert_eq!(s[basis_index(0, 0, 0)].re, k.a_coef);
        assert_eq!(s[basis_index(0, 1, 1)].re, k.b_coef);
        assert_eq!(s[basis_index(1, 0, 1)].re, k.c_coef);
        assert_eq!(s[basis_index(1, 1, 0)].re, k.d_coef);
        assert!((out.state.norm() - 1.0).abs() < 1e-15);

        let k = coefficients(pair(0.3, 0.9)).unwrap();
        let out = clone(GreatCircleAngle::new(PI), &k);
        assert_eq!(out.state, k.images().1);
    }

    #[test]
    fn isometry_examples() {
        for (e1, e2) in [(FRAC_1_SQRT_2, FRAC_1_SQRT_2), (1.0, 0.0), (0.0, 0.0)] {
            assert!(isometry_check(&coefficients(pair(e1, e2)).unwrap()) <= 1e-12);
        }
        let k = coefficients(pair(0.0, 0.0)).unwrap();
        assert_eq!((k.a_coef, k.b_coef, k.c_coef, k.d_coef), (0.5, 0.5, 0.5, 0.5));
    }

    #[test]
    fn reduced_clone_examples() {
        let out = clone(GreatCircleAngle::new(0.0), &coefficients(pair(1.0, 0.0)).unwrap());
        let (o, b, ob) = reduced_clones(&out);
        assert!(o.max_abs_diff(&ComplexMatrix::diagonal(&[1.0, 0.0])) < 1e-15);
        assert!(b.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
        assert!((ob.trace().re - 1.0).abs() < 1e-15);

        let out = clone(GreatCircleAngle::new(FRAC_PI_2), &coefficients(pair(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).unwrap());
        let (o, _, _) = reduced_clones(&out);
        let expected = bloch_to_density(&BlochVector::new(FRAC_1_SQRT_2, 0.0, 0.0)).unwrap();
        assert!(o.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn reduced_clones_are_states() {
        let out = clone(GreatCircleAngle::new(1.1), &coefficients(pair(0.35, 0.55)).unwrap());
        let (o, b, ob) = reduced_clones(&out);
        for m in [&o, &b, &ob] {
            assert!(m.hermiticity_error() < 1e-15);
            assert!((m.trace().re - 1.0).abs() < 1e-15);
            assert!(min_eigenvalue(m).unwrap() > -1e-15);
        }
    }

    #[test]
    fn symmetric_optimum_fidelity() {
        for theta in [0.0, 0.3, 1.9, 4.4] {
            let r = clone_report(GreatCircleAngle::new(theta), pair(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).unwrap();
            assert!((r.fidelity_o - 0.853_553_390_6).abs() < 1e-10);
            assert!((r.fidelity_b - 0.853_553_390_6).abs() < 1e-10);
        }
    }

    #[test]
    fn on_circle_report() {
        for theta in [0.0, 0.7, 2.2, 5.0] {
            let r = clone_report(GreatCircleAngle::new(theta), pair(0.6, 0.8)).unwrap();
            assert!(r.is_on_circle());
            assert!(r.isotropy_residual_o <= 1e-10 && r.isotropy_residual_b <= 1e-10);
            assert!((r.shrink_o - 0.6).abs() < 1e-12 && (r.shrink_b - 0.8).abs() < 1e-12);
            assert!((r.shrink_o_z - 0.6).abs() < 1e-12 && (r.shrink_o_x - 0.6).abs() < 1e-12);
            assert!((r.shrink_b_z - 0.8).abs() < 1e-12 && (r.shrink_b_x - 0.8).abs() < 1e-12);
            assert!((r.fidelity_o - 0.8).abs() < 1e-12 && (r.fidelity_b - 0.9).abs() < 1e-12);
            assert!(r.ppt_min_eigenvalue >= -1e-10);
            assert!(r.correlation.satisfies_no_signalling());
        }
    }

    #[test]
    fn off_circle_anisotropy() {
        // at θ = π/2 the clone Bloch vector is still along x, only shorter
        let r = clone_report(GreatCircleAngle::new(FRAC_PI_2), pair(0.5, 0.5)).unwrap();
        assert!(!r.is_on_circle());
        assert!((r.shrink_o_x - 0.75_f64.sqrt()).abs() < 1e-12);
        assert!((r.shrink_o_z - 0.5).abs() < 1e-12);
        let z = clone_report(GreatCircleAngle::new(0.0), pair(0.5, 0.5)).unwrap();
        assert!((z.shrink_o_z - 0.5).abs() < 1e-12);
        // between the axes the clone is no longer of isotropic form
        let mid = clone_report(GreatCircleAngle::new(PI / 4.0), pair(0.5, 0.5)).unwrap();
        assert!(mid.isotropy_residual_o > 1e-3);
    }

    #[test]
    fn isotropy_scan_examples() {
        assert!(isotropy_scan(pair(0.6, 0.8), 1000).unwrap() <= 1e-10);
        assert!(isotropy_scan(pair(1.0, 0.0), 100).unwrap() <= 1e-12);
        let gap = isotropy_scan(pair(0.7, 0.7), 100).unwrap();
        assert!(gap > 1e-3, "{gap}");
    }

    #[test]
    fn machine_covariance_examples() {
        let d = covariance_check_machine(pair(FRAC_1_SQRT_2, FRAC_1_SQRT_2), GreatCircleAngle::new(0.0), FRAC_PI_2).unwrap();
        assert!(d <= 1e-10);
        for (theta, beta) in [(0.0, 1.0), (2.0, -0.7), (4.0, 3.3)] {
            let d = covariance_check_machine(pair(1.0, 0.0), GreatCircleAngle::new(theta), beta).unwrap();
            assert!(d <= 1e-10);
        }
        assert_eq!(covariance_check_machine(pair(0.6, 0.8), GreatCircleAngle::new(1.3), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn partial_transpose_side_does_not_change_spectrum_minimum() {
        let out = clone(GreatCircleAngle::new(0.9), &coefficients(pair(0.6, 0.8)).unwrap());
        let (_, _, ob) = reduced_clones(&out);
        let on_b = min_eigenvalue(&partial_transpose(&ob, &[2, 2], 1).unwrap()).unwrap();
        let on_o = min_eigenvalue(&partial_transpose(&ob, &[2, 2], 0).unwrap()).unwrap();
        assert!((on_b - on_o).abs() < 1e-14);
    }
}
