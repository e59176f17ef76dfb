use super::{GmqdResult, Method};
use crate::matrix::{pauli, ComplexMatrix};
use crate::states::DensityMatrix;

/// Closed-form GMQD of a two-qubit state, `(|x|^2 + |R|^2 - k_max) / 4`
/// with `x_i = tr(rho s_i (x) I)`, `r_ij = tr(rho s_i (x) s_j)` and `k_max`
/// the top eigenvalue of `x x^T + R R^T`.
pub fn gmqd_dakic_two_qubit(rho: &DensityMatrix) -> GmqdResult {
    assert_eq!(rho.dim(), 4, "two-qubit formula needs a 4x4 state");
    let m = rho.matrix();
    let sigma = pauli();
    let i2 = ComplexMatrix::identity(2);
    let expect = |op: &ComplexMatrix| op.hs_inner(m).expect("4x4").re;

    let x: Vec<f64> = sigma.iter().map(|s| expect(&s.kron(&i2))).collect();
    let r: Vec<Vec<f64>> = sigma
        .iter()
        .map(|si| sigma.iter().map(|sj| expect(&si.kron(sj))).collect())
        .collect();

    let mut k = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            k[i][j] = x[i] * x[j] + (0..3).map(|l| r[i][l] * r[j][l]).sum::<f64>();
        }
    }
    let k_max = *ComplexMatrix::from_real_rows(&k)
        .hermitian_eigenvalues()
        .expect("K is symmetric")
        .last()
        .expect("3 eigenvalues");

    let x_norm: f64 = x.iter().map(|v| v * v).sum();
    let r_norm: f64 = r.iter().flatten().map(|v| v * v).sum();
    GmqdResult::new(0.25 * (x_norm + r_norm - k_max), None, Method::Dakic)
}
