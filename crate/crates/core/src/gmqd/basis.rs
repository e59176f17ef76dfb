use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::matrix::ComplexMatrix;
use crate::states::DensityMatrix;

/// Orthonormal Hermitian operator bases for the qubit (4) and qutrit (9)
/// Hilbert-Schmidt spaces.
#[derive(Debug, Clone)]
pub struct HermitianBasis {
    pub x_ops: [ComplexMatrix; 4],
    pub y_ops: [ComplexMatrix; 9],
}

/// Normalized identity, Pauli-like and Gell-Mann-like generators in the
/// order the correlation matrix is indexed.
pub fn standard_basis() -> HermitianBasis {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let m2 = |rows: [[Complex64; 2]; 2], s: f64| ComplexMatrix::from_rows(&rows).scale_real(s);
    let m3 = |rows: [[Complex64; 3]; 3], s: f64| ComplexMatrix::from_rows(&rows).scale_real(s);
    HermitianBasis {
        x_ops: [
            m2([[o, z], [z, o]], r2),
            m2([[z, o], [o, z]], r2),
            m2([[z, -i], [i, z]], r2),
            m2([[o, z], [z, -o]], r2),
        ],
        y_ops: [
            m3([[o, z, z], [z, o, z], [z, z, o]], 1.0 / 3f64.sqrt()),
            m3([[z, o, z], [o, z, z], [z, z, z]], r2),
            m3([[z, -i, z], [i, z, z], [z, z, z]], r2),
            m3([[o, z, z], [z, -o, z], [z, z, z]], r2),
            m3([[z, z, o], [z, z, z], [o, z, z]], r2),
            m3([[z, z, -i], [z, z, z], [i, z, z]], r2),
            m3([[o, z, z], [z, o, z], [z, z, -2.0 * o]], 1.0 / 6f64.sqrt()),
            m3([[z, z, z], [z, z, o], [z, o, z]], r2),
            m3([[z, z, z], [z, z, -i], [z, i, z]], r2),
        ],
    }
}

/// The 36 products `X_i (x) Y_j`, built once.
fn product_basis() -> &'static Vec<ComplexMatrix> {
    static PRODUCTS: OnceLock<Vec<ComplexMatrix>> = OnceLock::new();
    PRODUCTS.get_or_init(|| {
        let b = standard_basis();
        b.x_ops
            .iter()
            .flat_map(|x| b.y_ops.iter().map(move |y| x.kron(y)))
            .collect()
    })
}

/// Real 4x9 matrix of coefficients `c_ij = tr(rho X_i (x) Y_j)`.
///
/// Storage is 0-based; [`CorrelationMatrix::at`] takes the conventional
/// 1-based `(i, j)` labels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationMatrix {
    pub c: [[f64; 9]; 4],
}

impl CorrelationMatrix {
    pub fn zeros() -> Self {
        Self { c: [[0.0; 9]; 4] }
    }

    /// Entry by 1-based label, e.g. `at(1, 7)` for `c_17`.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.c[i - 1][j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.c[i - 1][j - 1] = v;
    }

    /// `C C^T`, a symmetric 4x4 matrix.
    pub fn gram(&self) -> [[f64; 4]; 4] {
        let mut g = [[0.0; 4]; 4];
        for (i, gi) in g.iter_mut().enumerate() {
            for (j, gij) in gi.iter_mut().enumerate() {
                *gij = (0..9).map(|k| self.c[i][k] * self.c[j][k]).sum();
            }
        }
        g
    }

    pub fn frobenius_sqr(&self) -> f64 {
        self.c.iter().flatten().map(|v| v * v).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.c
            .iter()
            .flatten()
            .zip(other.c.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest deviation with its 1-based label.
    pub fn worst_entry(&self, other: &Self) -> (usize, usize, f64) {
        let mut worst = (1, 1, 0.0);
        for i in 0..4 {
            for j in 0..9 {
                let d = (self.c[i][j] - other.c[i][j]).abs();
                if d > worst.2 {
                    worst = (i + 1, j + 1, d);
                }
            }
        }
        worst
    }

    /// `sum_ij c_ij X_i (x) Y_j`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let products = product_basis();
        let mut out = ComplexMatrix::zeros(6, 6);
        for (k, p) in products.iter().enumerate() {
            let v = self.c[k / 9][k % 9];
            if v != 0.0 {
                out = &out + &p.scale_real(v);
            }
        }
        out
    }
}

pub fn correlation_matrix(rho: &DensityMatrix) -> CorrelationMatrix {
    assert_eq!(rho.dim(), 6, "correlation matrix needs a qubit-qutrit state");
    // Coefficients of the Hermitian part are real up to roundoff.
    let h = rho.matrix().hermitian_part();
    let mut out = CorrelationMatrix::zeros();
    for (k, p) in product_basis().iter().enumerate() {
        // tr(rho P) = <P^dagger, rho> and P is Hermitian
        let v = p.hs_inner(&h).expect("both 6x6");
        debug_assert!(v.im.abs() <= 1e-10);
        out.c[k / 9][k % 9] = v.re;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{initial_state, random_density, validate_density, TwoParamState};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_is_orthonormal_and_hermitian() {
        let b = standard_basis();
        for ops in [&b.x_ops[..], &b.y_ops[..]] {
            for (i, p) in ops.iter().enumerate() {
                assert!(p.is_hermitian(0.0));
                for (j, q) in ops.iter().enumerate() {
                    let v = p.hs_inner(q).unwrap();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((v - Complex64::new(want, 0.0)).norm() <= 1e-12, "({i},{j}) {v}");
                }
            }
        }
    }

    #[test]
    fn y7_diagonal() {
        let y7 = &standard_basis().y_ops[6];
        let s = 6f64.sqrt();
        assert_abs_diff_eq!(y7[(0, 0)].re, 1.0 / s, epsilon = 1e-15);
        assert_abs_diff_eq!(y7[(1, 1)].re, 1.0 / s, epsilon = 1e-15);
        assert_abs_diff_eq!(y7[(2, 2)].re, -2.0 / s, epsilon = 1e-15);
    }

    #[test]
    fn noiseless_coefficients() {
        let (b, c) = (0.2, 0.1);
        let rho = initial_state(&TwoParamState::from_bc(b, c).unwrap());
        let cm = correlation_matrix(&rho);
        let mut want = CorrelationMatrix::zeros();
        want.set(1, 1, 1.0 / 6f64.sqrt());
        want.set(1, 7, -(2.0 - 9.0 * b - 3.0 * c) / (2.0 * 3f64.sqrt()));
        for k in 2..=4 {
            want.set(k, k, (b - c) / 2.0);
        }
        assert!(cm.max_abs_diff(&want) <= 1e-15, "{:?}", cm.worst_entry(&want));
    }

    #[test]
    fn b_third_c_zero() {
        let rho = initial_state(&TwoParamState::from_bc(1.0 / 3.0, 0.0).unwrap());
        assert_abs_diff_eq!(correlation_matrix(&rho).at(1, 7), 1.0 / (2.0 * 3f64.sqrt()), epsilon = 1e-15);
    }

    #[test]
    fn equal_weights_cancel_correlations() {
        let rho = initial_state(&TwoParamState::from_bc(0.2, 0.2).unwrap());
        let cm = correlation_matrix(&rho);
        for k in 2..=4 {
            assert_abs_diff_eq!(cm.at(k, k), 0.0, epsilon = 1e-16);
        }
    }

    #[test]
    fn maximally_mixed_has_only_normalization() {
        let rho = validate_density(ComplexMatrix::identity(6).scale_real(1.0 / 6.0)).unwrap();
        let cm = correlation_matrix(&rho);
        let mut want = CorrelationMatrix::zeros();
        want.set(1, 1, 1.0 / 6f64.sqrt());
        assert!(cm.max_abs_diff(&want) <= 1e-16);
    }

    #[test]
    fn reconstruction_of_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let rho = random_density(&mut rng, 6);
            let cm = correlation_matrix(&rho);
            assert_abs_diff_eq!(cm.at(1, 1), 1.0 / 6f64.sqrt(), epsilon = 1e-12);
            assert!(cm.reconstruct().max_abs_diff(rho.matrix()) <= 1e-10);
        }
    }
}
