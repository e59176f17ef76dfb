//! Brute-force GMQD: direct minimization of `tr(rho - chi)^2` over
//! classical-quantum states `chi`, sharing no code with the correlation
//! matrix route.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::numeric::MeasurementBasis;
use super::{GmqdResult, Method};
use crate::matrix::ComplexMatrix;
use crate::optim::{minimize_restarting, NelderMeadOptions};
use crate::states::DensityMatrix;

pub const DEFAULT_RESTARTS: usize = 32;
pub const DEFAULT_SEED: u64 = 2013;

/// theta, phi, then two 18-parameter qutrit factors.
const N_PARAMS: usize = 38;
const FACTOR: usize = 18;

/// A candidate zero-discord state
/// `p |k1><k1| (x) tau1 + (1 - p) |k2><k2| (x) tau2`.
#[derive(Debug, Clone)]
pub struct ClassicalQuantumState {
    pub basis: MeasurementBasis,
    pub weight: f64,
    pub tau: [ComplexMatrix; 2],
}

impl ClassicalQuantumState {
    /// The weights follow from the traces of the two unnormalized factors,
    /// which keeps the parameterization free of flat spots at `p = 0, 1`.
    fn from_params(x: &[f64]) -> Option<Self> {
        let basis = MeasurementBasis { theta: x[0], phi: x[1] };
        let (m1, t1) = gram3(&x[2..2 + FACTOR]);
        let (m2, t2) = gram3(&x[2 + FACTOR..]);
        let total = t1 + t2;
        if total.is_nan() || total <= 1e-300 {
            return None;
        }
        let norm = |m: [[Complex64; 3]; 3], t: f64| {
            if t > 1e-300 {
                ComplexMatrix::from_rows(&m).scale_real(1.0 / t)
            } else {
                ComplexMatrix::identity(3).scale_real(1.0 / 3.0)
            }
        };
        Some(Self {
            basis,
            weight: t1 / total,
            tau: [norm(m1, t1), norm(m2, t2)],
        })
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let [k1, k2] = basis_kets(self.basis.theta, self.basis.phi);
        let p1 = ComplexMatrix::projector(&k1).kron(&self.tau[0]).scale_real(self.weight);
        let p2 = ComplexMatrix::projector(&k2).kron(&self.tau[1]).scale_real(1.0 - self.weight);
        &p1 + &p2
    }
}

/// `|k1>, |k2>` for the qubit basis at `(theta, phi)`.
fn basis_kets(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    [[Complex64::new(c, 0.0), e * s], [Complex64::new(s, 0.0), -e * c]]
}

/// `G G^dagger` and its trace for a general complex `G` (real parts, then
/// imaginary parts, row-major). A triangular `G` would be cheaper but traps
/// the search whenever a diagonal entry reaches zero.
fn gram3(p: &[f64]) -> ([[Complex64; 3]; 3], f64) {
    let g = |i: usize, j: usize| Complex64::new(p[3 * i + j], p[9 + 3 * i + j]);
    let m: [[Complex64; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|k| (0..3).map(|j| g(i, j) * g(k, j).conj()).sum()));
    let tr = m[0][0].re + m[1][1].re + m[2][2].re;
    (m, tr)
}

/// `||rho - chi(x)||^2`, with the same parameterization as
/// [`ClassicalQuantumState::from_params`] but without allocating.
fn distance_sqr(rho: &[Complex64], x: &[f64]) -> f64 {
    let (m1, t1) = gram3(&x[2..2 + FACTOR]);
    let (m2, t2) = gram3(&x[2 + FACTOR..]);
    let total = t1 + t2;
    if total.is_nan() || total <= 1e-300 {
        return f64::INFINITY;
    }
    let [k1, k2] = basis_kets(x[0], x[1]);
    let mut acc = 0.0;
    for i in 0..2 {
        for k in 0..2 {
            let w1 = k1[i] * k1[k].conj() / total;
            let w2 = k2[i] * k2[k].conj() / total;
            for j in 0..3 {
                for l in 0..3 {
                    let chi = w1 * m1[j][l] + w2 * m2[j][l];
                    acc += (rho[(3 * i + j) * 6 + 3 * k + l] - chi).norm_sqr();
                }
            }
        }
    }
    acc
}

fn random_start(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut x = Vec::with_capacity(N_PARAMS);
    x.push(rng.gen_range(0.0..FRAC_PI_2));
    x.push(rng.gen_range(0.0..TAU));
    for _ in 0..2 * FACTOR {
        x.push(rng.gen_range(-1.0..1.0));
    }
    x
}

/// Minimum squared Hilbert-Schmidt distance from `rho` to the set of
/// classical-quantum states (measured on the qubit), by multi-start simplex
/// search. Restart `i` draws its start from stream `i` of a ChaCha8 generator
/// seeded with `seed`, so results do not depend on thread scheduling.
pub fn gmqd_oracle(rho: &DensityMatrix, restarts: usize, seed: u64) -> GmqdResult {
    assert_eq!(rho.dim(), 6, "oracle needs a qubit-qutrit state");
    let restarts = restarts.max(1);
    let m = rho.matrix().as_slice().to_vec();
    let opts = NelderMeadOptions {
        step: 0.25,
        ftol: 1e-13,
        xtol: 1e-7,
        max_evals: 30_000,
        adaptive: true,
    };

    let runs: Vec<(f64, Vec<f64>)> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let x0 = random_start(&mut rng);
            let r = minimize_restarting(|x| distance_sqr(&m, x), &x0, &opts, 8);
            (r.value, r.x)
        })
        .collect();

    let (_, x) = runs
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one restart");
    // report the distance of the assembled state, not the fast-path value
    let value = match ClassicalQuantumState::from_params(&x) {
        Some(chi) => (rho.matrix() - &chi.matrix()).norm_sqr(),
        None => f64::INFINITY,
    };
    let basis = MeasurementBasis::canonical(x[0], x[1]);
    GmqdResult::new(value, Some(basis), Method::Oracle)
}
