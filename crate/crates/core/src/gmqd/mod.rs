//! Geometric measure of quantum discord, measured on the qubit.
//!
//! Four independent routes are provided:
//! - [`gmqd_numeric`]: the correlation-matrix formulation, maximized over qubit
//!   measurement bases by grid search and simplex refinement;
//! - [`gmqd_closed_form`]: analytic values for the two-parameter family;
//! - [`gmqd_oracle`]: brute-force distance minimization over classical-quantum states;
//! - [`gmqd_dakic_two_qubit`]: the two-qubit eigenvalue formula.

mod basis;
mod closed_form;
mod dakic;
mod numeric;
mod oracle;

use serde::Serialize;

pub use basis::{correlation_matrix, standard_basis, CorrelationMatrix, HermitianBasis};
pub use closed_form::{closed_form_coefficients, gmqd_closed_form};
pub use dakic::gmqd_dakic_two_qubit;
pub use numeric::{
    gmqd_from_correlation, gmqd_numeric, measurement_matrix, objective, MeasurementBasis, PHI_POINTS,
    REFINE_STARTS, THETA_POINTS,
};
pub use oracle::{gmqd_oracle, ClassicalQuantumState, DEFAULT_RESTARTS, DEFAULT_SEED};

/// Values in `[-CLAMP_TOL, 0)` are roundoff and are reported as zero.
pub const CLAMP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Numeric,
    ClosedForm,
    Oracle,
    Dakic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GmqdResult {
    /// Squared Hilbert-Schmidt distance to the nearest zero-discord state.
    pub value: f64,
    /// Optimal qubit measurement basis, when the method produces one.
    pub argmax: Option<MeasurementBasis>,
    pub method: Method,
    /// Set when a small negative roundoff value was clamped to zero.
    pub clamped: bool,
}

impl GmqdResult {
    pub(crate) fn new(value: f64, argmax: Option<MeasurementBasis>, method: Method) -> Self {
        let clamped = (-CLAMP_TOL..0.0).contains(&value);
        Self {
            value: if clamped { 0.0 } else { value },
            argmax,
            method,
            clamped,
        }
    }

    pub fn closed_form(value: f64) -> Self {
        Self::new(value, None, Method::ClosedForm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamps_roundoff_only() {
        let r = GmqdResult::new(-1e-13, None, Method::Numeric);
        assert_eq!(r.value, 0.0);
        assert!(r.clamped);
        let r = GmqdResult::new(-1e-6, None, Method::Numeric);
        assert_eq!(r.value, -1e-6);
        assert!(!r.clamped);
        assert!(!GmqdResult::new(0.0, None, Method::Numeric).clamped);
    }
}
