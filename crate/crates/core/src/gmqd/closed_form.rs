//! Analytic GMQD values and coefficient matrices for the two-parameter
//! family under each noise scenario.
//!
//! All results carry a `(b - c)^2` (or `(b - c)`) factor, so `b = c` states
//! have zero discord under every channel.

use crate::channels::{ChannelKind, Locality, NoiseScenario};

use super::basis::CorrelationMatrix;

/// Analytic GMQD of the evolved two-parameter state.
///
/// Local-only dephasing decays linearly in `1 - gamma`; on the qubit the
/// other four channels all decay quadratically, while on the qutrit trit
/// flips and trit-phase flips leave a finite residue at `gamma_b = 1`.
pub fn gmqd_closed_form(s: &NoiseScenario, b: f64, c: f64) -> f64 {
    let d = (b - c).powi(2);
    let (ka, kb) = (1.0 - s.gamma_a(), 1.0 - s.gamma_b());
    let gb = s.gamma_b();
    match (s.locality(), s.kind()) {
        (Locality::QubitOnly, ChannelKind::Dephasing) => 0.5 * d * ka,
        (Locality::QubitOnly, _) => 0.5 * d * ka * ka,
        (Locality::QutritOnly, ChannelKind::Dephasing) => 0.5 * d * kb,
        (Locality::QutritOnly, ChannelKind::PhaseFlip | ChannelKind::Depolarizing) => 0.5 * d * kb * kb,
        (Locality::QutritOnly, ChannelKind::BitFlip) => trit_flip_residue(d, gb),
        (Locality::QutritOnly, ChannelKind::BitPhaseFlip) => trit_phase_flip_residue(d, gb),
        (Locality::MultiLocal, ChannelKind::Dephasing) => 0.5 * d * ka * kb,
        (Locality::MultiLocal, ChannelKind::PhaseFlip | ChannelKind::Depolarizing) => {
            0.5 * d * (ka * kb).powi(2)
        }
        (Locality::MultiLocal, ChannelKind::BitFlip) => ka * ka * trit_flip_residue(d, gb),
        (Locality::MultiLocal, ChannelKind::BitPhaseFlip) => ka * ka * trit_phase_flip_residue(d, gb),
    }
}

fn trit_flip_residue(d: f64, gb: f64) -> f64 {
    d / 12.0 * (6.0 + 5.0 * (gb - 2.0) * gb)
}

fn trit_phase_flip_residue(d: f64, gb: f64) -> f64 {
    d / 24.0 * (12.0 + gb * (9.0 * gb - 20.0))
}

/// Analytic coefficient matrix `c_ij` of the evolved state.
///
/// Local-only scenarios carry a zero strength on the idle side, which
/// reduces the multi-local tables to the single-subsystem case.
pub fn closed_form_coefficients(s: &NoiseScenario, b: f64, c: f64) -> CorrelationMatrix {
    let (ga, gb) = (s.gamma_a(), s.gamma_b());
    let bc = b - c;
    let diag0 = -(2.0 - 9.0 * b - 3.0 * c) / (2.0 * 3f64.sqrt());

    let mut m = CorrelationMatrix::zeros();
    m.set(1, 1, 1.0 / 6f64.sqrt());
    match s.kind() {
        ChannelKind::Dephasing => {
            let coh = 0.5 * bc * ((1.0 - ga) * (1.0 - gb)).sqrt();
            m.set(1, 7, diag0);
            m.set(2, 2, coh);
            m.set(3, 3, coh);
            m.set(4, 4, 0.5 * bc);
        }
        ChannelKind::PhaseFlip => {
            let coh = 0.5 * bc * (1.0 - ga) * (1.0 - gb);
            m.set(1, 7, diag0);
            m.set(2, 2, coh);
            m.set(3, 3, coh);
            m.set(4, 4, 0.5 * bc);
        }
        ChannelKind::BitFlip => {
            m.set(1, 7, -diag0 * (gb - 1.0));
            m.set(2, 2, -bc * (2.0 * gb - 3.0) / 6.0);
            m.set(2, 5, bc * gb / 6.0);
            m.set(2, 8, bc * gb / 6.0);
            m.set(3, 3, bc * (2.0 * gb - 3.0) * (ga - 1.0) / 6.0);
            m.set(3, 6, bc * (ga - 1.0) * gb / 6.0);
            m.set(3, 9, -bc * (ga - 1.0) * gb / 6.0);
            m.set(4, 4, 0.5 * bc * (gb - 1.0) * (ga - 1.0));
        }
        ChannelKind::BitPhaseFlip => {
            m.set(1, 7, -diag0 * (gb - 1.0));
            m.set(2, 2, bc * (2.0 * gb - 3.0) * (ga - 1.0) / 6.0);
            m.set(2, 5, bc * (ga - 1.0) * gb / 12.0);
            m.set(2, 8, bc * (ga - 1.0) * gb / 12.0);
            m.set(3, 3, -bc * (2.0 * gb - 3.0) / 6.0);
            m.set(3, 6, bc * gb / 12.0);
            m.set(3, 9, -bc * gb / 12.0);
            m.set(4, 4, 0.5 * bc * (gb - 1.0) * (ga - 1.0));
        }
        ChannelKind::Depolarizing => {
            let coh = 0.5 * bc * (1.0 - ga) * (1.0 - gb);
            m.set(1, 7, -diag0 * (gb - 1.0));
            m.set(2, 2, coh);
            m.set(3, 3, coh);
            m.set(4, 4, coh);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn multi_local_dephasing_value() {
        let s = NoiseScenario::multi_local(ChannelKind::Dephasing, 0.5, 0.5).unwrap();
        assert_abs_diff_eq!(gmqd_closed_form(&s, 0.2, 0.1), 0.00125, epsilon = 1e-16);
    }

    #[test]
    fn trit_flip_residue_at_full_strength() {
        let s = NoiseScenario::qutrit_only(ChannelKind::BitFlip, 1.0).unwrap();
        assert_abs_diff_eq!(gmqd_closed_form(&s, 0.2, 0.1), 1.0 / 1200.0, epsilon = 1e-16);
        let s = NoiseScenario::qutrit_only(ChannelKind::BitPhaseFlip, 1.0).unwrap();
        assert_abs_diff_eq!(gmqd_closed_form(&s, 0.2, 0.1), 0.01 / 24.0, epsilon = 1e-16);
    }

    #[test]
    fn equal_weights_vanish_everywhere() {
        for k in ChannelKind::ALL {
            for l in Locality::ALL {
                let s = NoiseScenario::with_locality(k, l, 0.37, 0.81).unwrap();
                assert_eq!(gmqd_closed_form(&s, 0.2, 0.2), 0.0);
            }
        }
    }

    #[test]
    fn every_formula_starts_at_noiseless_value() {
        for k in ChannelKind::ALL {
            for l in Locality::ALL {
                let s = NoiseScenario::new(k, l, 0.0, 0.0).unwrap();
                assert_abs_diff_eq!(gmqd_closed_form(&s, 0.3, 0.05), 0.5 * 0.25f64.powi(2), epsilon = 1e-16);
            }
        }
    }

    #[test]
    fn local_limits_agree_with_multi_local_tables() {
        for k in ChannelKind::ALL {
            for g in [0.0, 0.2, 0.7, 1.0] {
                let ml = NoiseScenario::multi_local(k, 0.0, g).unwrap();
                let qt = NoiseScenario::qutrit_only(k, g).unwrap();
                assert_abs_diff_eq!(gmqd_closed_form(&ml, 0.1, 0.6), gmqd_closed_form(&qt, 0.1, 0.6), epsilon = 1e-16);
                if k != ChannelKind::Dephasing {
                    let ml = NoiseScenario::multi_local(k, g, 0.0).unwrap();
                    let qb = NoiseScenario::qubit_only(k, g).unwrap();
                    assert_abs_diff_eq!(gmqd_closed_form(&ml, 0.1, 0.6), gmqd_closed_form(&qb, 0.1, 0.6), epsilon = 1e-16);
                }
            }
        }
    }

    #[test]
    fn bit_flip_without_qutrit_noise() {
        let (b, c, ga) = (0.2, 0.1, 0.4);
        let s = NoiseScenario::multi_local(ChannelKind::BitFlip, ga, 0.0).unwrap();
        let m = closed_form_coefficients(&s, b, c);
        // sigma_x commutes with a qubit bit flip, so c_22 is untouched
        assert_abs_diff_eq!(m.at(2, 2), 0.5 * (b - c), epsilon = 1e-16);
        assert_abs_diff_eq!(m.at(3, 3), 0.5 * (b - c) * (1.0 - ga), epsilon = 1e-16);
        assert_abs_diff_eq!(m.at(4, 4), 0.5 * (b - c) * (1.0 - ga), epsilon = 1e-16);
        for (i, j) in [(2, 5), (2, 8), (3, 6), (3, 9)] {
            assert_eq!(m.at(i, j).abs(), 0.0);
        }
    }

    #[test]
    fn trit_phase_flip_sign_pattern() {
        let (b, c, gb) = (0.2, 0.1, 0.6);
        let s = NoiseScenario::multi_local(ChannelKind::BitPhaseFlip, 0.3, gb).unwrap();
        let m = closed_form_coefficients(&s, b, c);
        assert_abs_diff_eq!(m.at(3, 6), (b - c) * gb / 12.0, epsilon = 1e-16);
        assert_abs_diff_eq!(m.at(3, 9), -(b - c) * gb / 12.0, epsilon = 1e-16);
    }

    #[test]
    fn depolarizing_diagonal() {
        let (b, c, ga, gb) = (0.2, 0.1, 0.3, 0.6);
        let s = NoiseScenario::multi_local(ChannelKind::Depolarizing, ga, gb).unwrap();
        let m = closed_form_coefficients(&s, b, c);
        for k in 2..=4 {
            assert_abs_diff_eq!(m.at(k, k), 0.5 * (b - c) * (1.0 - ga) * (1.0 - gb), epsilon = 1e-16);
        }
    }
}
