use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::Write as _;
use std::path::Path;

use gcclone_core::bound::{X, Y, Z};
use gcclone_core::pauli::sin_cos;
use gcclone_core::{clone_report, max_radius, CloneReport, GreatCircleAngle, ShrinkPair};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{CliError, RunConfig};
use crate::csv;

pub const BOUND_SWEEP_HEADER: &str = "phi,eta1,eta2,max_radius_found,circle_radius,deviation";
pub const FIDELITY_SWEEP_HEADER: &str = "phi,eta1,eta2,fidelity_o,fidelity_b,ppt_min_eig,isotropy_residual";

/// One point of the recovered boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub phi: f64,
    pub eta1: f64,
    pub eta2: f64,
    pub max_radius_found: f64,
    pub circle_radius: f64,
    pub deviation: f64,
}

impl SweepRow {
    fn values(&self) -> Vec<f64> {
        vec![self.phi, self.eta1, self.eta2, self.max_radius_found, self.circle_radius, self.deviation]
    }
}

/// Cloner quality at one point of the optimal circle, over a θ scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityRow {
    pub phi: f64,
    pub eta1: f64,
    pub eta2: f64,
    /// Worst case over the scanned inputs.
    pub fidelity_o: f64,
    pub fidelity_b: f64,
    pub ppt_min_eig: f64,
    pub isotropy_residual: f64,
}

impl FidelityRow {
    fn values(&self) -> Vec<f64> {
        vec![
            self.phi,
            self.eta1,
            self.eta2,
            self.fidelity_o,
            self.fidelity_b,
            self.ppt_min_eig,
            self.isotropy_residual,
        ]
    }
}

fn quarter_grid(n: usize) -> impl IndexedParallelIterator<Item = (usize, f64)> {
    (0..n).into_par_iter().map(move |k| {
        let phi = if k + 1 == n { FRAC_PI_2 } else { k as f64 * FRAC_PI_2 / (n - 1) as f64 };
        (k, phi)
    })
}

/// Single cloning run. Angles are in radians.
pub fn cmd_clone(theta: f64, eta1: f64, eta2: f64) -> Result<CloneReport, CliError> {
    if !theta.is_finite() {
        return Err(CliError::Usage(format!("--theta must be finite, got {theta}")));
    }
    let etas = ShrinkPair::new(eta1, eta2).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(clone_report(GreatCircleAngle::new(theta), etas)?)
}

pub fn format_clone_report(r: &CloneReport) -> String {
    let mut s = String::new();
    let circle = if r.is_on_circle() {
        "on optimal circle"
    } else {
        "OFF optimal circle (eta1^2 + eta2^2 != 1)"
    };
    let _ = writeln!(s, "input theta         {:.8} rad", r.theta.radians());
    let _ = writeln!(s, "eta1, eta2          {:.8}, {:.8}   {circle}", r.etas.eta1, r.etas.eta2);
    let _ = writeln!(s, "eta1^2 + eta2^2     {:.10}", r.etas.radius_squared());
    let _ = writeln!(s);
    let _ = writeln!(s, "clone  shrink      z-shrink    x-shrink    fidelity    isotropy residual");
    for (name, shrink, z, x, f, res) in [
        ("o", r.shrink_o, r.shrink_o_z, r.shrink_o_x, r.fidelity_o, r.isotropy_residual_o),
        ("b", r.shrink_b, r.shrink_b_z, r.shrink_b_x, r.fidelity_b, r.isotropy_residual_b),
    ] {
        let _ = writeln!(s, "{name:<6} {shrink:<11.8} {z:<11.8} {x:<11.8} {f:<11.8} {res:.3e}");
    }
    let anisotropy = (r.shrink_o_x - r.shrink_o_z).abs().max((r.shrink_b_x - r.shrink_b_z).abs());
    if anisotropy > 1e-10 {
        let _ = writeln!(
            s,
            "anisotropic: clone o x-shrink {:.8} vs z-shrink {:.8}; clone b x-shrink {:.8} vs z-shrink {:.8}",
            r.shrink_o_x, r.shrink_o_z, r.shrink_b_x, r.shrink_b_z
        );
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "correlation tensor t_jk (rows x, y, z)");
    for j in [X, Y, Z] {
        let t = &r.correlation;
        let _ = writeln!(s, "  {:>12.8} {:>12.8} {:>12.8}", t[(j, X)], t[(j, Y)], t[(j, Z)]);
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "ppt min eigenvalue  {:.3e}", r.ppt_min_eigenvalue);
    s
}

/// Recovers the feasibility boundary along `n_phi` rays covering the quarter plane.
///
/// Each ray draws from its own stream of the seeded generator, so rows do not
/// depend on scheduling.
pub fn bound_sweep(n_phi: usize, config: &RunConfig) -> Result<Vec<SweepRow>, CliError> {
    if n_phi < 2 {
        return Err(CliError::Usage(format!("--n-phi must be at least 2, got {n_phi}")));
    }
    config.validate()?;
    let opts = config.search_options();
    let rows = quarter_grid(n_phi)
        .map(|(k, phi)| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(k as u64);
            let r = max_radius(phi, config.radius_tol, &opts, &mut rng);
            let (s, c) = sin_cos(phi);
            SweepRow {
                phi,
                eta1: r * c,
                eta2: r * s,
                max_radius_found: r,
                circle_radius: 1.0,
                deviation: (r - 1.0).abs(),
            }
        })
        .collect();
    Ok(rows)
}

pub fn render_bound_sweep(rows: &[SweepRow]) -> String {
    let values: Vec<Vec<f64>> = rows.iter().map(SweepRow::values).collect();
    csv::render(BOUND_SWEEP_HEADER, &values)
}

pub fn cmd_bound_sweep(n_phi: usize, config: &RunConfig, out_path: &Path) -> Result<Vec<SweepRow>, CliError> {
    let rows = bound_sweep(n_phi, config)?;
    csv::write(out_path, &render_bound_sweep(&rows))?;
    Ok(rows)
}

/// Runs the cloner along the optimal circle, `samples` inputs per point.
pub fn fidelity_sweep(n_points: usize, samples: usize) -> Result<Vec<FidelityRow>, CliError> {
    if n_points < 2 {
        return Err(CliError::Usage(format!("--n-points must be at least 2, got {n_points}")));
    }
    if samples < 2 {
        return Err(CliError::Usage(format!("--samples must be at least 2, got {samples}")));
    }
    quarter_grid(n_points)
        .map(|(_, phi)| {
            let etas = ShrinkPair::on_circle(phi);
            let mut row = FidelityRow {
                phi,
                eta1: etas.eta1,
                eta2: etas.eta2,
                fidelity_o: f64::INFINITY,
                fidelity_b: f64::INFINITY,
                ppt_min_eig: f64::INFINITY,
                isotropy_residual: 0.0,
            };
            for j in 0..samples {
                let theta = GreatCircleAngle::new(TAU * j as f64 / samples as f64);
                let r = clone_report(theta, etas)?;
                row.fidelity_o = row.fidelity_o.min(r.fidelity_o);
                row.fidelity_b = row.fidelity_b.min(r.fidelity_b);
                row.ppt_min_eig = row.ppt_min_eig.min(r.ppt_min_eigenvalue);
                row.isotropy_residual = row
                    .isotropy_residual
                    .max(r.isotropy_residual_o)
                    .max(r.isotropy_residual_b);
            }
            Ok(row)
        })
        .collect()
}

pub fn render_fidelity_sweep(rows: &[FidelityRow]) -> String {
    let values: Vec<Vec<f64>> = rows.iter().map(FidelityRow::values).collect();
    csv::render(FIDELITY_SWEEP_HEADER, &values)
}

pub fn cmd_fidelity_sweep(n_points: usize, samples: usize, out_path: &Path) -> Result<Vec<FidelityRow>, CliError> {
    let rows = fidelity_sweep(n_points, samples)?;
    csv::write(out_path, &render_fidelity_sweep(&rows))?;
    Ok(rows)
}
