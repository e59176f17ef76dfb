//! Derivative-free Nelder-Mead simplex minimization.

use std::cell::Cell;

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Edge length of the initial axis-aligned simplex.
    pub step: f64,
    /// Stop once the spread of objective values across the simplex is below this.
    pub ftol: f64,
    /// ...and every vertex is within this distance of the best one.
    pub xtol: f64,
    pub max_evals: usize,
    /// Dimension-dependent coefficients (Gao & Han), better for larger problems.
    pub adaptive: bool,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            step: 0.1,
            ftol: 1e-12,
            xtol: 1e-10,
            max_evals: 20_000,
            adaptive: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

struct Coefficients {
    reflect: f64,
    expand: f64,
    contract: f64,
    shrink: f64,
}

impl Coefficients {
    fn new(n: usize, adaptive: bool) -> Self {
        if adaptive && n > 2 {
            let n = n as f64;
            Self {
                reflect: 1.0,
                expand: 1.0 + 2.0 / n,
                contract: 0.75 - 1.0 / (2.0 * n),
                shrink: 1.0 - 1.0 / n,
            }
        } else {
            Self {
                reflect: 1.0,
                expand: 2.0,
                contract: 0.5,
                shrink: 0.5,
            }
        }
    }
}

fn affine(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    // from + t * (to - from)
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

/// Minimizes `f` starting from `x0`.
pub fn minimize<F>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    assert!(n >= 1, "need at least one parameter");
    let co = Coefficients::new(n, opts.adaptive);
    let evals = Cell::new(0usize);
    let eval = |x: &[f64]| {
        evals.set(evals.get() + 1);
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += opts.step;
        let v = eval(&x);
        simplex.push((x, v));
    }

    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        let spread = (worst - best).abs();
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread <= opts.ftol && diameter <= opts.xtol {
            converged = true;
            break;
        }
        if evals.get() >= opts.max_evals {
            break;
        }

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst_x = simplex[n].0.clone();
        let second_worst = simplex[n - 1].1;

        let xr = affine(&centroid, &worst_x, -co.reflect);
        let fr = eval(&xr);
        if fr < best {
            let xe = affine(&centroid, &worst_x, -co.reflect * co.expand);
            let fe = eval(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < second_worst {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst {
            // outside contraction
            let xc = affine(&centroid, &xr, co.contract);
            let fc = eval(&xc);
            (xc, fc)
        } else {
            let xc = affine(&centroid, &worst_x, co.contract);
            let fc = eval(&xc);
            (xc, fc)
        };
        if fc < fr.min(worst) {
            simplex[n] = (xc, fc);
            continue;
        }
        let x_best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = affine(&x_best, &vertex.0, co.shrink);
            let v = eval(&x);
            *vertex = (x, v);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum {
        x,
        value,
        evals: evals.get(),
        converged,
    }
}

/// Repeats [`minimize`] from the incumbent with a fresh simplex until a
/// round improves the objective by no more than `ftol`, or `max_rounds` is hit.
pub fn minimize_restarting<F>(f: F, x0: &[f64], opts: &NelderMeadOptions, max_rounds: usize) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let mut best = minimize(&f, x0, opts);
    let mut total = best.evals;
    for _ in 1..max_rounds {
        let next = minimize(&f, &best.x, opts);
        total += next.evals;
        let improved = best.value - next.value;
        if next.value < best.value {
            best = next;
        }
        if improved <= opts.ftol {
            break;
        }
    }
    best.evals = total;
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2);
        let m = minimize(f, &[0.0, 0.0], &NelderMeadOptions::default());
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-6);
        assert!((m.x[1] + 2.0).abs() < 1e-6);
        assert!(m.value < 1e-12);
    }

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2);
        let opts = NelderMeadOptions {
            max_evals: 50_000,
            ..Default::default()
        };
        let m = minimize_restarting(f, &[-1.2, 1.0], &opts, 5);
        assert!((m.x[0] - 1.0).abs() < 1e-5, "{:?}", m);
        assert!((m.x[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn higher_dimension_adaptive() {
        let f = |x: &[f64]| x.iter().enumerate().map(|(i, v)| (i + 1) as f64 * (v - 0.5).powi(2)).sum::<f64>();
        let opts = NelderMeadOptions {
            adaptive: true,
            ftol: 1e-14,
            xtol: 1e-8,
            max_evals: 100_000,
            step: 0.5,
        };
        let m = minimize_restarting(f, &[0.0; 12], &opts, 10);
        assert!(m.value < 1e-10, "{}", m.value);
    }

    #[test]
    fn one_dimensional() {
        let m = minimize(|x: &[f64]| (x[0] - 3.0).powi(2), &[0.0], &NelderMeadOptions::default());
        assert!((m.x[0] - 3.0).abs() < 1e-6);
    }

    #[test]
    fn nan_is_treated_as_worst() {
        let f = |x: &[f64]| if x[0] < 0.0 { f64::NAN } else { (x[0] - 0.2).powi(2) + x[1] * x[1] };
        let m = minimize(f, &[0.5, 0.5], &NelderMeadOptions::default());
        assert!((m.x[0] - 0.2).abs() < 1e-6);
    }

    #[test]
    fn respects_eval_budget() {
        let opts = NelderMeadOptions {
            max_evals: 50,
            ..Default::default()
        };
        let m = minimize(|x: &[f64]| x[0].abs().sqrt() + x[1].abs(), &[5.0, 5.0], &opts);
        assert!(m.evals <= 50 + 4);
    }
}
