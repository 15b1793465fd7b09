//! The full invariant suite behind `gcclone verify`.
//!
//! Every check draws from one seeded generator in a fixed order, so a given
//! [`RunConfig`] always measures the same residuals.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI, TAU};
use std::fmt;

use gcclone_core::bound::{bound_rhs, CorrelationTensor, FreeCorrelations, ShrinkPair};
use gcclone_core::linalg::{c, hermitian_eigen, kron, partial_trace, ComplexMatrix};
use gcclone_core::pauli::{bloch_to_density, density_to_bloch, pauli_decompose, rotate_bloch, rotation_unitary};
use gcclone_core::{
    build_joint_output, clone, clone_report, constrain_tensor, covariance_check_machine, covariance_residual,
    feasibility, isometry_check, isotropy_scan, max_radius, no_signalling_residual, positivity_matrix_up,
    reduced_clones, rotate_correlations, BlochVector, CloneCoefficients, GreatCircleAngle,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{CliError, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expect {
    AtMost(f64),
    Above(f64),
}

/// One named invariant and the worst residual seen.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub expect: Expect,
}

impl Check {
    pub fn passed(&self) -> bool {
        match self.expect {
            Expect::AtMost(tol) => self.measured <= tol,
            Expect::Above(floor) => self.measured > floor,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        match self.expect {
            Expect::AtMost(tol) => write!(f, "{verdict} {}: max residual {:.1e} (tol {:.0e})", self.name, self.measured, tol),
            Expect::Above(floor) => write!(f, "{verdict} {}: min gap {:.1e} (must exceed {:.0e})", self.name, self.measured, floor),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn least(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::INFINITY, f64::min)
}

fn random_hermitian<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    for i in 0..4 {
        m[(i, i)] = c(rng.gen_range(-1.0..1.0), 0.0);
        for j in (i + 1)..4 {
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

fn random_unit_trace<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let m = random_hermitian(rng);
    let shift = 0.25 * (1.0 - m.trace().re);
    &m + &ComplexMatrix::identity(4).scale_real(shift)
}

fn random_unitary<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let mut phases = ComplexMatrix::zeros(4);
    for i in 0..4 {
        let p: f64 = rng.gen_range(-PI..PI);
        phases[(i, i)] = c(p.cos(), p.sin());
    }
    let mut ry = || rotation_unitary(rng.gen_range(-PI..PI));
    let left = kron(&ry(), &ry());
    let right = kron(&ry(), &ry());
    &(&left * &phases) * &right
}

fn random_tensor<R: Rng>(rng: &mut R) -> CorrelationTensor {
    let mut e = [[0.0; 3]; 3];
    e.iter_mut().flatten().for_each(|v| *v = rng.gen_range(-1.0..1.0));
    CorrelationTensor::new(e)
}

fn random_free<R: Rng>(rng: &mut R) -> FreeCorrelations {
    let mut p = [0.0; 7];
    p.iter_mut().for_each(|v| *v = rng.gen_range(-1.0..=1.0));
    FreeCorrelations::from_array(p)
}

fn random_etas<R: Rng>(rng: &mut R) -> ShrinkPair {
    ShrinkPair::new(rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0)).expect("sampled in range")
}

fn random_circle<R: Rng>(rng: &mut R) -> ShrinkPair {
    ShrinkPair::on_circle(rng.gen_range(0.0..=FRAC_PI_2))
}

fn random_theta<R: Rng>(rng: &mut R) -> GreatCircleAngle {
    GreatCircleAngle::new(rng.gen_range(0.0..TAU))
}

/// Reduced states by explicit sums over the traced indices of the 8 amplitudes.
pub fn index_sum_oracle(amp: &[Complex64]) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let zero = Complex64::new(0.0, 0.0);
    let mut o = [[zero; 2]; 2];
    let mut b = [[zero; 2]; 2];
    let mut ob = [[zero; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for x in 0..2 {
                for y in 0..2 {
                    o[i][j] += amp[4 * i + 2 * x + y] * amp[4 * j + 2 * x + y].conj();
                    b[i][j] += amp[4 * x + 2 * i + y] * amp[4 * x + 2 * j + y].conj();
                    for m in 0..2 {
                        ob[2 * i + x][2 * j + y] += amp[4 * i + 2 * x + m] * amp[4 * j + 2 * y + m].conj();
                    }
                }
            }
        }
    }
    (ComplexMatrix::from_rows(&o), ComplexMatrix::from_rows(&b), ComplexMatrix::from_rows(&ob))
}

/// Runs every invariant. Core errors abort the run; failed residuals do not.
pub fn run(config: &RunConfig) -> Result<VerifyReport, CliError> {
    config.validate()?;
    let n = config.samples;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let rng = &mut rng;
    let mut checks = Vec::new();
    let mut push = |name, measured, expect| checks.push(Check { name, measured, expect });

    // linear algebra
    let mut eig = 0.0_f64;
    for _ in 0..n {
        let m = random_hermitian(rng);
        let u = random_unitary(rng);
        let a = hermitian_eigen(&m)?;
        let b = hermitian_eigen(&m.conjugate_by(&u).symmetrized())?;
        for (k, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
            eig = eig.max((x - y).abs());
            let v = a.vector(k);
            let mv = m.apply(&v);
            let resid = mv
                .as_slice()
                .iter()
                .zip(v.as_slice())
                .map(|(p, q)| (p - q * x).norm_sqr())
                .sum::<f64>()
                .sqrt();
            eig = eig.max(resid);
        }
        eig = eig.max((a.values.iter().sum::<f64>() - m.trace().re).abs());
    }
    push("eigen_unitary_invariance", eig, Expect::AtMost(1e-9));

    let mut pt = 0.0_f64;
    for _ in 0..n {
        let rho = random_unit_trace(rng);
        for keep in [0, 1] {
            let r = partial_trace(&rho, &[2, 2], &[keep])?;
            pt = pt.max(r.hermiticity_error()).max((r.trace() - 1.0).norm());
        }
    }
    push("partial_trace_unit_trace", pt, Expect::AtMost(1e-12));

    let mut assoc = 0.0_f64;
    for _ in 0..n {
        let mut small = || {
            let mut m = ComplexMatrix::zeros(2);
            for i in 0..2 {
                for j in 0..2 {
                    m[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
            m
        };
        let (a, b, d) = (small(), small(), small());
        assoc = assoc.max(kron(&kron(&a, &b), &d).max_abs_diff(&kron(&a, &kron(&b, &d))));
    }
    push("kron_associativity", assoc, Expect::AtMost(1e-15));

    // Bloch geometry
    let mut conj = 0.0_f64;
    for _ in 0..n {
        let theta: f64 = rng.gen_range(0.0..PI);
        let azimuth: f64 = rng.gen_range(0.0..TAU);
        let radius: f64 = rng.gen_range(0.0..=1.0);
        let beta: f64 = rng.gen_range(-TAU..TAU);
        let m = BlochVector::new(
            radius * theta.sin() * azimuth.cos(),
            radius * theta.sin() * azimuth.sin(),
            radius * theta.cos(),
        );
        let rho = bloch_to_density(&m)?;
        let rotated = density_to_bloch(&rho.conjugate_by(&rotation_unitary(beta)))?;
        conj = conj.max(rotated.max_abs_diff(&rotate_bloch(&m, beta)));
    }
    push("bloch_conjugation_consistency", conj, Expect::AtMost(1e-12));

    let mut round = 0.0_f64;
    for _ in 0..n {
        let rho = random_unit_trace(rng);
        round = round.max(pauli_decompose(&rho)?.reconstruct().max_abs_diff(&rho));
    }
    push("pauli_round_trip", round, Expect::AtMost(1e-12));

    let (mut compose_u, mut compose_t) = (0.0_f64, 0.0_f64);
    for _ in 0..n {
        let (b1, b2): (f64, f64) = (rng.gen_range(-TAU..TAU), rng.gen_range(-TAU..TAU));
        let prod = &rotation_unitary(b1) * &rotation_unitary(b2);
        let joint = rotation_unitary(b1 + b2);
        compose_u = compose_u.max(prod.max_abs_diff(&joint).min(prod.max_abs_diff(&joint.scale_real(-1.0))));
        let t = random_tensor(rng);
        let twice = rotate_correlations(&rotate_correlations(&t, b1), b2);
        compose_t = compose_t.max(twice.max_abs_diff(&rotate_correlations(&t, b1 + b2)));
    }
    push("rotation_composition", compose_u, Expect::AtMost(1e-12));
    push("rotation_group_action", compose_t, Expect::AtMost(1e-12));

    // no-signalling bound
    let mut cov = 0.0_f64;
    for _ in 0..n.max(500) {
        let m = random_theta(rng).bloch();
        let (etas, t, beta) = (random_etas(rng), random_tensor(rng), rng.gen_range(-TAU..TAU));
        cov = cov.max(covariance_residual(&m, etas, &t, beta)?);
    }
    push("rotation_relations_covariance", cov, Expect::AtMost(1e-12));

    let (mut transcription, mut signalling, mut soundness) = (0.0_f64, 0.0_f64, f64::NEG_INFINITY);
    for _ in 0..n.max(500) {
        let etas = random_etas(rng);
        let free = random_free(rng);
        let scale: f64 = rng.gen_range(0.0..=1.0);
        let t = constrain_tensor(&free)?;
        let explicit = positivity_matrix_up(etas, &t)?;
        transcription = transcription.max(explicit.max_abs_diff(&build_joint_output(&BlochVector::UP, etas, &t)?));
        signalling = signalling.max(no_signalling_residual(etas, &t));

        let shrunk = constrain_tensor(&FreeCorrelations::from_array(free.to_array().map(|v| v * scale)))?;
        let check = gcclone_core::linalg::is_psd(&positivity_matrix_up(etas, &shrunk)?, 1e-10)?;
        if check.psd {
            soundness = soundness.max(etas.radius_squared() - bound_rhs(&shrunk));
        }
    }
    push("transcription_identity", transcription, Expect::AtMost(1e-14));
    push("no_signalling_constrained", signalling, Expect::AtMost(1e-12));
    push("bound_soundness", soundness.max(0.0), Expect::AtMost(1e-8));

    let violation = least((0..n).map(|_| {
        let mut t = random_tensor(rng);
        while (t[(0, 0)] - t[(2, 2)]).abs() < 1e-3 {
            t = random_tensor(rng);
        }
        no_signalling_residual(random_etas(rng), &t)
    }));
    push("no_signalling_violation_detected", violation, Expect::Above(0.0));

    let opts = config.search_options();
    let circle = worst(
        [0.0, FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, FRAC_PI_2]
            .iter()
            .map(|&phi| (max_radius(phi, config.radius_tol, &opts, rng) - 1.0).abs()),
    );
    push("circle_recovery", circle, Expect::AtMost(2e-3));

    let beyond = feasibility(ShrinkPair::new(0.8, 0.8)?, &opts, rng);
    push("beyond_circle_infeasible", -beyond.best_min_eigenvalue, Expect::Above(1e-4));

    // cloning machine
    let (mut norm, mut iso) = (0.0_f64, 0.0_f64);
    for _ in 0..n {
        let k = CloneCoefficients::new(random_etas(rng))?;
        norm = norm.max((clone(random_theta(rng), &k).state.norm() - 1.0).abs());
        iso = iso.max(isometry_check(&k));
    }
    push("machine_normalization", norm, Expect::AtMost(1e-12));
    push("machine_isometry", iso, Expect::AtMost(1e-12));

    let (mut ns, mut constraints) = (0.0_f64, 0.0_f64);
    let (mut fidelity, mut attainment, mut ppt, mut cov_machine) = (0.0_f64, 0.0_f64, f64::INFINITY, 0.0_f64);
    for _ in 0..n {
        let etas = random_circle(rng);
        let k = CloneCoefficients::new(etas)?;
        let joint = |theta: f64| reduced_clones(&clone(GreatCircleAngle::new(theta), &k)).2;
        let poles = &joint(0.0) + &joint(PI);
        let equator = &joint(FRAC_PI_2) + &joint(1.5 * PI);
        ns = ns.max(poles.max_abs_diff(&equator));

        let theta = random_theta(rng);
        let r = clone_report(theta, etas)?;
        let (a, b) = r.correlation.constraint_defects();
        constraints = constraints.max(a.abs()).max(b.abs());
        fidelity = fidelity
            .max((r.fidelity_o - 0.5 * (1.0 + etas.eta1)).abs())
            .max((r.fidelity_b - 0.5 * (1.0 + etas.eta2)).abs());
        attainment = attainment.max((r.shrink_o.powi(2) + r.shrink_b.powi(2) - 1.0).abs());
        ppt = ppt.min(r.ppt_min_eigenvalue);
        cov_machine = cov_machine.max(covariance_check_machine(etas, theta, rng.gen_range(-TAU..TAU))?);
    }
    push("machine_no_signalling", ns, Expect::AtMost(1e-12));
    push("machine_tensor_constraints", constraints, Expect::AtMost(1e-12));
    push("fidelity_law", fidelity, Expect::AtMost(1e-10));
    push("bound_attainment", attainment, Expect::AtMost(1e-10));
    push("separability", (-ppt).max(0.0), Expect::AtMost(config.psd_tol));
    push("machine_covariance", cov_machine, Expect::AtMost(1e-10));

    let on_circle = worst(
        (0..10)
            .map(|_| isotropy_scan(random_circle(rng), n))
            .collect::<Result<Vec<_>, _>>()?,
    );
    push("isotropy_on_circle", on_circle, Expect::AtMost(1e-10));
    let off_circle = least(
        [(0.7, 0.7), (0.5, 0.5)]
            .iter()
            .map(|&(a, b)| isotropy_scan(ShrinkPair::new(a, b)?, n))
            .collect::<Result<Vec<_>, _>>()?,
    );
    push("isotropy_off_circle", off_circle, Expect::Above(1e-3));

    let mut oracle = 0.0_f64;
    for _ in 0..n {
        let out = clone(random_theta(rng), &CloneCoefficients::new(random_etas(rng))?);
        let (o, b, ob) = reduced_clones(&out);
        let (po, pb, pob) = index_sum_oracle(out.state.as_slice());
        oracle = oracle.max(o.max_abs_diff(&po)).max(b.max_abs_diff(&pb)).max(ob.max_abs_diff(&pob));
    }
    push("oracle_equivalence", oracle, Expect::AtMost(1e-12));

    Ok(VerifyReport { seed: config.seed, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_display() {
        let c = Check { name: "fidelity_law", measured: 3.1e-13, expect: Expect::AtMost(1e-10) };
        assert_eq!(c.to_string(), "PASS fidelity_law: max residual 3.1e-13 (tol 1e-10)");
        let c = Check { name: "gap", measured: 1e-5, expect: Expect::Above(1e-3) };
        assert!(!c.passed());
        assert!(c.to_string().starts_with("FAIL gap"));
    }

    #[test]
    fn oracle_on_basis_state() {
        let mut amp = vec![Complex64::new(0.0, 0.0); 8];
        amp[5] = Complex64::new(1.0, 0.0); // |1 0 1⟩
        let (o, b, ob) = index_sum_oracle(&amp);
        assert_eq!(o, ComplexMatrix::diagonal(&[0.0, 1.0]));
        assert_eq!(b, ComplexMatrix::diagonal(&[1.0, 0.0]));
        assert_eq!(ob, ComplexMatrix::diagonal(&[0.0, 0.0, 1.0, 0.0]));
    }
}
