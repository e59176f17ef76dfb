//! The two-parameter qubit-qutrit state family and validated density matrices.
//!
//! Composite basis states `|i>_A |j>_B` (qubit `i`, qutrit `j`) live at flat
//! index `3i + j` everywhere in this crate.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, GATE_TOL};

/// Tolerance on the `2a + 3b + c = 1` constraint.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// Flat index of `|qubit>|qutrit>` in the 6-dimensional space.
pub const fn flat(qubit: usize, qutrit: usize) -> usize {
    3 * qubit + qutrit
}

/// Weights of the two-parameter family
/// `a(|02><02| + |12><12|) + b(P[phi+] + P[phi-] + P[psi+]) + c P[psi-]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoParamState {
    a: f64,
    b: f64,
    c: f64,
}

impl TwoParamState {
    /// Derives `a = (1 - 3b - c) / 2`.
    pub fn from_bc(b: f64, c: f64) -> Result<Self> {
        Self::new((1.0 - 3.0 * b - c) / 2.0, b, c)
    }

    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParameters("a, b and c must be finite".into()));
        }
        let residual = 2.0 * a + 3.0 * b + c - 1.0;
        if residual.abs() > CONSTRAINT_TOL {
            return Err(Error::InvalidParameters(format!(
                "2a+3b+c=1 violated (2a+3b+c-1 = {residual:e})"
            )));
        }
        for (name, v) in [("a", a), ("b", b), ("c", c)] {
            if v < -CONSTRAINT_TOL {
                return Err(Error::InvalidParameters(format!(
                    "2a+3b+c=1 gives {name}<0 ({name} = {v})"
                )));
            }
        }
        Ok(Self {
            a: a.max(0.0),
            b: b.max(0.0),
            c: c.max(0.0),
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];

    fn amplitudes(self) -> [Complex64; 6] {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut v = [Complex64::new(0.0, 0.0); 6];
        let (first, second, sign) = match self {
            BellKind::PhiPlus => (flat(0, 0), flat(1, 1), 1.0),
            BellKind::PhiMinus => (flat(0, 0), flat(1, 1), -1.0),
            BellKind::PsiPlus => (flat(0, 1), flat(1, 0), 1.0),
            BellKind::PsiMinus => (flat(0, 1), flat(1, 0), -1.0),
        };
        v[first] = h;
        v[second] = h * sign;
        v
    }
}

/// Projector onto a Bell state embedded in the qutrit's `{|0>, |1>}` levels.
pub fn bell_state(kind: BellKind) -> ComplexMatrix {
    ComplexMatrix::projector(&kind.amplitudes())
}

fn basis_projector(qubit: usize, qutrit: usize) -> ComplexMatrix {
    let mut v = [Complex64::new(0.0, 0.0); 6];
    v[flat(qubit, qutrit)] = Complex64::new(1.0, 0.0);
    ComplexMatrix::projector(&v)
}

pub fn initial_state(p: &TwoParamState) -> DensityMatrix {
    let a_part = &basis_projector(0, 2) + &basis_projector(1, 2);
    let b_part = &(&bell_state(BellKind::PhiPlus) + &bell_state(BellKind::PhiMinus))
        + &bell_state(BellKind::PsiPlus);
    let rho = &(&a_part.scale_real(p.a) + &b_part.scale_real(p.b))
        + &bell_state(BellKind::PsiMinus).scale_real(p.c);
    validate_density(rho).expect("two-parameter family is a valid state for admissible weights")
}

/// Two-qubit Werner state `z P[psi-] + (1 - z) I/4`.
pub fn werner_state(z: f64) -> Result<DensityMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let singlet = ComplexMatrix::projector(&[
        Complex64::new(0.0, 0.0),
        Complex64::new(h, 0.0),
        Complex64::new(-h, 0.0),
        Complex64::new(0.0, 0.0),
    ]);
    let rho = &singlet.scale_real(z) + &ComplexMatrix::identity(4).scale_real((1.0 - z) / 4.0);
    validate_density(rho)
}

/// Random full-rank state `G G^dagger / tr(G G^dagger)` with Gaussian-like `G`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let data = (0..dim * dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let g = ComplexMatrix::from_vec(dim, dim, data).expect("finite samples");
    let gg = &g * &g.adjoint();
    let tr = gg.trace().expect("square").re;
    validate_density(gg.scale_real(1.0 / tr)).expect("G G^dagger is a state")
}

/// A matrix that has passed the Hermitian, unit-trace and PSD gates.
#[derive(Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.mat
            .hermitian_eigenvalues()
            .expect("density matrices are Hermitian")
    }
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityMatrix({:?})", self.mat)
    }
}

pub fn validate_density(m: ComplexMatrix) -> Result<DensityMatrix> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if ![2, 3, 4, 6].contains(&m.rows()) {
        return Err(Error::UnsupportedDimension(m.rows()));
    }
    let defect = m.hermiticity_defect();
    if defect > GATE_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let trace = m.trace()?.re;
    if (trace - 1.0).abs() > GATE_TOL {
        return Err(Error::TraceNotOne { trace });
    }
    let min_eigenvalue = m.hermitian_eigenvalues()?[0];
    if min_eigenvalue < -GATE_TOL {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    Ok(DensityMatrix { mat: m })
}

impl FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi+" => Ok(BellKind::PhiPlus),
            "phi-" => Ok(BellKind::PhiMinus),
            "psi+" => Ok(BellKind::PsiPlus),
            "psi-" => Ok(BellKind::PsiMinus),
            _ => Err(Error::UnknownName {
                what: "Bell state",
                name: s.to_string(),
            }),
        }
    }
}
