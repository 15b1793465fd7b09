//! Derivative-free maximization with the Nelder–Mead simplex method.

/// Result of one simplex run.
#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Maximum number of objective evaluations.
    pub max_evaluations: usize,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// Stop once the spread of objective values across the simplex drops below this.
    pub value_tol: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_evaluations: 1000,
            initial_step: 0.25,
            value_tol: 1e-15,
        }
    }
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Maximizes `objective` starting from `start`.
pub fn maximize<F>(mut objective: F, start: &[f64], opts: &SimplexOptions) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = start.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64], count: &mut usize| {
        *count += 1;
        // internally minimize the negation
        -objective(x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let f0 = eval(start, &mut evaluations);
    simplex.push((start.to_vec(), f0));
    for i in 0..n {
        if evaluations >= opts.max_evaluations {
            break;
        }
        let mut x = start.to_vec();
        // step inward so vertices near +1 stay close to the box
        x[i] += if x[i] > 0.0 { -opts.initial_step } else { opts.initial_step };
        let f = eval(&x, &mut evaluations);
        simplex.push((x, f));
    }

    while simplex.len() == n + 1 && evaluations < opts.max_evaluations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[n].1);
        if (worst - best).abs() <= opts.value_tol {
            break;
        }

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let along = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = along(REFLECT);
        let fr = eval(&reflected, &mut evaluations);
        if fr < simplex[0].1 {
            let expanded = along(EXPAND);
            let fe = if evaluations < opts.max_evaluations {
                eval(&expanded, &mut evaluations)
            } else {
                f64::INFINITY
            };
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        if evaluations >= opts.max_evaluations {
            break;
        }
        let (contracted, fc) = if fr < simplex[n].1 {
            let x = along(CONTRACT);
            let f = eval(&x, &mut evaluations);
            (x, f)
        } else {
            let x = along(-CONTRACT);
            let f = eval(&x, &mut evaluations);
            (x, f)
        };
        if fc < simplex[n].1.min(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            if evaluations >= opts.max_evaluations {
                break;
            }
            let x: Vec<f64> = anchor
                .iter()
                .zip(&vertex.0)
                .map(|(a, v)| a + SHRINK * (v - a))
                .collect();
            let f = eval(&x, &mut evaluations);
            *vertex = (x, f);
        }
    }

    let (best_point, best_neg) = simplex
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("simplex has at least the start vertex");
    SimplexResult {
        best_point,
        best_value: -best_neg,
        evaluations,
    }
}
