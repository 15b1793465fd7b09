//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gcclone::commands::{bound_sweep, cmd_clone};
use gcclone::RunConfig;
use gcclone_core::linalg::ComplexMatrix;
use gcclone_core::{
    build_joint_output, clone, clone_report, constrain_tensor, covariance_residual, feasibility, isometry_check,
    isotropy_scan, no_signalling_residual, positivity_matrix_up, reduced_clones, rotate_correlations, BlochVector,
    CloneCoefficients, CorrelationTensor, FreeCorrelations, GreatCircleAngle, SearchOptions, ShrinkPair,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn random_etas(r: &mut ChaCha8Rng) -> ShrinkPair {
    ShrinkPair::new(r.gen_range(0.0..=1.0), r.gen_range(0.0..=1.0)).unwrap()
}

fn random_tensor(r: &mut ChaCha8Rng) -> CorrelationTensor {
    let mut e = [[0.0; 3]; 3];
    e.iter_mut().flatten().for_each(|v| *v = r.gen_range(-1.0..1.0));
    CorrelationTensor::new(e)
}

fn random_constrained(r: &mut ChaCha8Rng) -> CorrelationTensor {
    let mut p = [0.0; 7];
    p.iter_mut().for_each(|v| *v = r.gen_range(-1.0..=1.0));
    constrain_tensor(&FreeCorrelations::from_array(p)).unwrap()
}

fn symmetric_fidelity() -> Outcome {
    let expected = 0.5 + (1.0_f64 / 8.0).sqrt();
    let mut worst = 0.0_f64;
    for k in 0..20 {
        let theta = TAU * k as f64 / 20.0;
        let r = cmd_clone(theta, FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        worst = worst.max((r.fidelity_o - expected).abs()).max((r.fidelity_b - expected).abs());
    }
    outcome(worst <= 1e-9, format!("max |F - 0.8535533906| = {worst:.1e} over 20 inputs (tol 1e-9)"))
}

fn curve_recovery() -> Outcome {
    let rows = bound_sweep(9, &RunConfig::default()).unwrap();
    let lo = rows.iter().map(|r| r.max_radius_found).fold(f64::INFINITY, f64::min);
    let hi = rows.iter().map(|r| r.max_radius_found).fold(0.0, f64::max);
    let ok = rows.len() == 9 && lo >= 0.998 && hi <= 1.002;
    outcome(ok, format!("max_radius_found in [{lo:.6}, {hi:.6}] over 9 rays (need [0.998, 1.002])"))
}

fn beyond_circle() -> Outcome {
    let report = feasibility(ShrinkPair::new(0.8, 0.8).unwrap(), &SearchOptions::default(), &mut rng(3));
    let lam = report.best_min_eigenvalue;
    outcome(
        !report.feasible && lam < -1e-4,
        format!("best min eigenvalue {lam:.4e} after {} evaluations (need < -1e-4)", report.evaluations),
    )
}

fn no_signalling_identity() -> Outcome {
    let r = &mut rng(4);
    let constrained = (0..200)
        .map(|_| {
            let etas = random_etas(r);
            no_signalling_residual(etas, &random_constrained(r))
        })
        .fold(0.0, f64::max);
    let mut violating = f64::INFINITY;
    for _ in 0..200 {
        let etas = random_etas(r);
        let mut t = random_tensor(r);
        while t[(0, 0)] == t[(2, 2)] {
            t = random_tensor(r);
        }
        violating = violating.min(no_signalling_residual(etas, &t));
    }
    outcome(
        constrained <= 1e-12 && violating > 0.0,
        format!("constrained max residual {constrained:.1e} (tol 1e-12); violating min residual {violating:.3e} (need > 0)"),
    )
}

/// The cardinal-angle tables exactly as printed, as (row, column, source row, source column, sign).
fn printed_listing(beta_degrees: u32) -> [[(usize, usize, f64); 3]; 3] {
    const P: f64 = 1.0;
    const M: f64 = -1.0;
    let (x, y, z) = (0, 1, 2);
    match beta_degrees {
        0 => [
            [(x, x, P), (x, y, P), (x, z, P)],
            [(y, x, P), (y, y, P), (y, z, P)],
            [(z, x, P), (z, y, P), (z, z, P)],
        ],
        180 => [
            [(x, x, P), (x, y, M), (x, z, P)],
            [(y, x, M), (y, y, P), (y, z, M)],
            [(z, x, P), (z, y, P), (z, z, P)],
        ],
        90 => [
            [(z, z, P), (z, y, P), (z, x, M)],
            [(y, z, P), (y, y, P), (y, x, M)],
            [(x, z, M), (x, y, M), (x, x, P)],
        ],
        270 => [
            [(z, z, P), (z, y, M), (z, x, M)],
            [(y, z, M), (y, y, P), (y, x, P)],
            [(x, z, M), (x, y, P), (x, x, P)],
        ],
        _ => unreachable!(),
    }
}

fn rotation_equivalence() -> Outcome {
    let r = &mut rng(5);
    let mut covariance = 0.0_f64;
    for _ in 0..500 {
        let m = GreatCircleAngle::new(r.gen_range(0.0..TAU)).bloch();
        let (etas, t, beta) = (random_etas(r), random_tensor(r), r.gen_range(-TAU..TAU));
        covariance = covariance.max(covariance_residual(&m, etas, &t, beta).unwrap());
    }

    let names = ["x", "y", "z"];
    let mut mismatches = Vec::new();
    let t = random_tensor(r);
    for (degrees, beta) in [(0, 0.0), (90, FRAC_PI_2), (180, PI), (270, 1.5 * PI)] {
        let rotated = rotate_correlations(&t, beta);
        let table = printed_listing(degrees);
        for j in 0..3 {
            for k in 0..3 {
                let (sj, sk, sign) = table[j][k];
                if rotated[(j, k)] != sign * t[(sj, sk)] {
                    mismatches.push(format!("t'_{}{} at {degrees} deg", names[j], names[k]));
                }
            }
        }
    }
    let listing = if mismatches.is_empty() {
        "all 36 listed entries reproduced".to_string()
    } else {
        format!("listing mismatch: {}", mismatches.join(", "))
    };
    outcome(
        covariance <= 1e-12 && mismatches.is_empty(),
        format!("covariance max residual {covariance:.1e} (tol 1e-12); {listing}"),
    )
}

fn isotropy_iff_on_circle() -> Outcome {
    let mut on = 0.0_f64;
    for k in 0..20 {
        let phi = FRAC_PI_2 * k as f64 / 19.0;
        on = on.max(isotropy_scan(ShrinkPair::on_circle(phi), 200).unwrap());
    }
    let off_a = isotropy_scan(ShrinkPair::new(0.7, 0.7).unwrap(), 200).unwrap();
    let off_b = isotropy_scan(ShrinkPair::new(0.5, 0.5).unwrap(), 200).unwrap();
    outcome(
        on <= 1e-10 && off_a > 1e-3 && off_b > 1e-3,
        format!("on-circle max {on:.1e} (tol 1e-10); (0.7,0.7) {off_a:.3e}, (0.5,0.5) {off_b:.3e} (need > 1e-3)"),
    )
}

fn separability() -> Outcome {
    let r = &mut rng(7);
    let mut least = f64::INFINITY;
    for _ in 0..500 {
        let etas = ShrinkPair::on_circle(r.gen_range(0.0..=FRAC_PI_2));
        let theta = GreatCircleAngle::new(r.gen_range(0.0..TAU));
        least = least.min(clone_report(theta, etas).unwrap().ppt_min_eigenvalue);
    }
    outcome(least >= -1e-10, format!("min partial-transpose eigenvalue {least:.2e} over 500 runs (need >= -1e-10)"))
}

fn transcription() -> Outcome {
    let r = &mut rng(8);
    let mut worst = 0.0_f64;
    for _ in 0..500 {
        let etas = random_etas(r);
        let t = random_constrained(r);
        let explicit = positivity_matrix_up(etas, &t).unwrap();
        let general = build_joint_output(&BlochVector::UP, etas, &t).unwrap();
        worst = worst.max(explicit.max_abs_diff(&general));
    }
    outcome(worst <= 1e-14, format!("max entry gap {worst:.1e} over 500 inputs (tol 1e-14)"))
}

/// Reduced states from the full 8×8 projector by explicit loops over traced indices.
fn brute_force(psi: &[Complex64]) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let rho: Vec<Vec<Complex64>> = psi.iter().map(|a| psi.iter().map(|b| a * b.conj()).collect()).collect();
    let idx = |o: usize, b: usize, m: usize| 4 * o + 2 * b + m;
    let zero = Complex64::new(0.0, 0.0);
    let mut ro = vec![vec![zero; 2]; 2];
    let mut rb = vec![vec![zero; 2]; 2];
    let mut rob = vec![vec![zero; 4]; 4];
    for (i, j) in (0..2).flat_map(|i| (0..2).map(move |j| (i, j))) {
        for (p, q) in (0..2).flat_map(|p| (0..2).map(move |q| (p, q))) {
            ro[i][j] += rho[idx(i, p, q)][idx(j, p, q)];
            rb[i][j] += rho[idx(p, i, q)][idx(p, j, q)];
        }
    }
    for (o1, b1, o2, b2) in (0..16).map(|n| (n >> 3 & 1, n >> 2 & 1, n >> 1 & 1, n & 1)) {
        for m in 0..2 {
            rob[2 * o1 + b1][2 * o2 + b2] += rho[idx(o1, b1, m)][idx(o2, b2, m)];
        }
    }
    (ComplexMatrix::from_rows(&ro), ComplexMatrix::from_rows(&rb), ComplexMatrix::from_rows(&rob))
}

fn oracle_equivalence() -> Outcome {
    let r = &mut rng(9);
    let mut worst = 0.0_f64;
    for _ in 0..500 {
        let coeffs = CloneCoefficients::new(random_etas(r)).unwrap();
        let out = clone(GreatCircleAngle::new(r.gen_range(0.0..TAU)), &coeffs);
        let (o, b, ob) = reduced_clones(&out);
        let (po, pb, pob) = brute_force(out.state.as_slice());
        worst = worst.max(o.max_abs_diff(&po)).max(b.max_abs_diff(&pb)).max(ob.max_abs_diff(&pob));
    }
    outcome(worst <= 1e-12, format!("max entry gap {worst:.1e} over 500 runs (tol 1e-12)"))
}

fn isometry_and_normalization() -> Outcome {
    let (mut iso, mut norm) = (0.0_f64, 0.0_f64);
    let r = &mut rng(10);
    for i in 0..50 {
        for j in 0..50 {
            let etas = ShrinkPair::new(i as f64 / 49.0, j as f64 / 49.0).unwrap();
            let coeffs = CloneCoefficients::new(etas).unwrap();
            iso = iso.max(isometry_check(&coeffs));
            let out = clone(GreatCircleAngle::new(r.gen_range(0.0..TAU)), &coeffs);
            norm = norm.max((out.state.norm() - 1.0).abs());
        }
    }
    outcome(
        iso <= 1e-12 && norm <= 1e-12,
        format!("isometry {iso:.1e}, norm deviation {norm:.1e} over 50x50 grid (tol 1e-12)"),
    )
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("symmetric optimal fidelity", Duration::from_secs(1), symmetric_fidelity),
        ("optimal curve recovery", Duration::from_secs(120), curve_recovery),
        ("infeasibility beyond the circle", Duration::from_secs(30), beyond_circle),
        ("no-signalling identity", Duration::from_secs(5), no_signalling_identity),
        ("rotation-relation equivalence", Duration::from_secs(5), rotation_equivalence),
        ("isotropy iff on-circle", Duration::from_secs(10), isotropy_iff_on_circle),
        ("separability of the joint output", Duration::from_secs(10), separability),
        ("transcription identity", Duration::from_secs(5), transcription),
        ("oracle equivalence", Duration::from_secs(5), oracle_equivalence),
        ("isometry and normalization", Duration::from_secs(5), isometry_and_normalization),
    ];
    let mut failed = 0;
    for (n, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let passed = result.passed && in_time;
        if !passed {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {} [{:.3}s, limit {}s{}]",
            if passed { "PASS" } else { "FAIL" },
            n + 1,
            result.detail,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", too slow" },
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
