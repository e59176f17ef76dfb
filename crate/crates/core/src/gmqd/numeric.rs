use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use super::basis::{correlation_matrix, CorrelationMatrix};
use super::{GmqdResult, Method};
use crate::optim::{minimize_restarting, NelderMeadOptions};
use crate::states::DensityMatrix;

pub const THETA_POINTS: usize = 64;
pub const PHI_POINTS: usize = 128;
/// Number of best grid cells refined by the simplex search.
pub const REFINE_STARTS: usize = 3;

/// Qubit measurement basis
/// `{cos t|0> + e^{ip} sin t|1>, sin t|0> - e^{ip} cos t|1>}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    /// Maps arbitrary angles onto `theta in [0, pi/2]`, `phi in [0, 2pi)`
    /// describing the same projectors.
    pub fn canonical(theta: f64, phi: f64) -> Self {
        let [nx, ny, nz] = bloch_direction(theta, phi);
        let theta = 0.5 * nz.clamp(-1.0, 1.0).acos();
        let phi = if nx.hypot(ny) < 1e-15 {
            0.0
        } else {
            ny.atan2(nx).rem_euclid(TAU)
        };
        // rem_euclid may round up to exactly 2pi
        let phi = if phi >= TAU { 0.0 } else { phi };
        Self { theta, phi }
    }
}

fn bloch_direction(theta: f64, phi: f64) -> [f64; 3] {
    let (s2, c2) = (2.0 * theta).sin_cos();
    [s2 * phi.cos(), s2 * phi.sin(), c2]
}

/// The 2x4 matrix `a_ki = tr(|k><k| X_i)` for the basis `m`.
pub fn measurement_matrix(m: MeasurementBasis) -> [[f64; 4]; 2] {
    let [nx, ny, nz] = bloch_direction(m.theta, m.phi);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [[r, r * nx, r * ny, r * nz], [r, -r * nx, -r * ny, -r * nz]]
}

/// `tr(A G A^T)` for `G = C C^T`.
pub fn objective(gram: &[[f64; 4]; 4], m: MeasurementBasis) -> f64 {
    let a = measurement_matrix(m);
    let mut total = 0.0;
    for row in &a {
        for i in 0..4 {
            for j in 0..4 {
                total += row[i] * gram[i][j] * row[j];
            }
        }
    }
    total
}

fn grid_theta(i: usize) -> f64 {
    FRAC_PI_2 * i as f64 / (THETA_POINTS - 1) as f64
}

fn grid_phi(j: usize) -> f64 {
    TAU * j as f64 / PHI_POINTS as f64
}

/// Luo-Fu GMQD `tr(C C^T) - max_A tr(A C C^T A^T)` from a coefficient matrix.
pub fn gmqd_from_correlation(cm: &CorrelationMatrix) -> GmqdResult {
    let gram = cm.gram();
    let total: f64 = (0..4).map(|i| gram[i][i]).sum();

    let mut cells: Vec<(f64, usize, usize)> = Vec::with_capacity(THETA_POINTS * PHI_POINTS);
    for i in 0..THETA_POINTS {
        for j in 0..PHI_POINTS {
            let f = objective(&gram, MeasurementBasis { theta: grid_theta(i), phi: grid_phi(j) });
            cells.push((f, i, j));
        }
    }
    // descending objective; ties keep grid order (stable sort)
    cells.sort_by(|a, b| b.0.total_cmp(&a.0));

    let opts = NelderMeadOptions {
        step: PI / (2.0 * PHI_POINTS as f64),
        ftol: 1e-12,
        xtol: 1e-9,
        max_evals: 4_000,
        adaptive: false,
    };
    let neg = |x: &[f64]| -objective(&gram, MeasurementBasis { theta: x[0], phi: x[1] });

    let mut best = (cells[0].0, MeasurementBasis { theta: grid_theta(cells[0].1), phi: grid_phi(cells[0].2) });
    for &(_, i, j) in cells.iter().take(REFINE_STARTS) {
        let m = minimize_restarting(neg, &[grid_theta(i), grid_phi(j)], &opts, 4);
        if -m.value > best.0 {
            best = (-m.value, MeasurementBasis::canonical(m.x[0], m.x[1]));
        }
    }

    GmqdResult::new(total - best.0, Some(best.1), Method::Numeric)
}

/// GMQD of a qubit-qutrit state by grid search plus simplex refinement over
/// qubit measurement bases.
pub fn gmqd_numeric(rho: &DensityMatrix) -> GmqdResult {
    gmqd_from_correlation(&correlation_matrix(rho))
}
