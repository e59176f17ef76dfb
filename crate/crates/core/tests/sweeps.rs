use gmqd::channels::{ChannelKind, Locality};
use gmqd::dynamics::{check_no_sudden_death, run_sweep, SuddenDeathCheck, SweepRow, SweepSpec};

fn sweep(kind: ChannelKind, loc: Locality, b: f64, c: f64, n: usize) -> Vec<SweepRow> {
    run_sweep(&SweepSpec::gamma(kind, loc, b, c, n)).unwrap()
}

fn column(rows: &[SweepRow]) -> Vec<f64> {
    rows.iter().map(|r| r.d_numeric).collect()
}

#[test]
fn closed_forms_never_increase_with_noise() {
    for kind in ChannelKind::ALL {
        for loc in Locality::ALL {
            let rows = sweep(kind, loc, 0.1, 0.5, 101);
            for w in rows.windows(2) {
                assert!(
                    w[1].d_closed <= w[0].d_closed + 1e-15,
                    "{loc} {kind}: rises between gamma {} and {}",
                    w[0].gamma_a.max(w[0].gamma_b),
                    w[1].gamma_a.max(w[1].gamma_b)
                );
            }
            let worst = rows.iter().map(|r| r.abs_err).fold(0.0, f64::max);
            assert!(worst <= 1e-8, "{loc} {kind}: abs_err {worst:e}");
        }
    }
}

#[test]
fn qubit_only_non_dephasing_kinds_coincide() {
    let reference = column(&sweep(ChannelKind::PhaseFlip, Locality::QubitOnly, 0.25, 0.05, 41));
    for kind in [ChannelKind::BitFlip, ChannelKind::BitPhaseFlip, ChannelKind::Depolarizing] {
        let other = column(&sweep(kind, Locality::QubitOnly, 0.25, 0.05, 41));
        for (x, y) in reference.iter().zip(&other) {
            assert!((x - y).abs() <= 1e-10, "{kind}: {x} vs {y}");
        }
    }
    let dephasing = column(&sweep(ChannelKind::Dephasing, Locality::QubitOnly, 0.25, 0.05, 41));
    assert!((dephasing[20] - reference[20]).abs() > 1e-4);
}

#[test]
fn qutrit_only_classes() {
    let phase = column(&sweep(ChannelKind::PhaseFlip, Locality::QutritOnly, 0.0, 0.3, 41));
    let depol = column(&sweep(ChannelKind::Depolarizing, Locality::QutritOnly, 0.0, 0.3, 41));
    for (x, y) in phase.iter().zip(&depol) {
        assert!((x - y).abs() <= 1e-10);
    }
    for kind in [ChannelKind::Dephasing, ChannelKind::BitFlip, ChannelKind::BitPhaseFlip] {
        let other = column(&sweep(kind, Locality::QutritOnly, 0.0, 0.3, 41));
        assert!((other[20] - phase[20]).abs() > 1e-4, "{kind} should differ from phase-flip");
    }
}

#[test]
fn no_sudden_death_for_separated_weights() {
    for kind in ChannelKind::ALL {
        for loc in Locality::ALL {
            for (b, c) in [(1.0 / 3.0, 0.0), (0.1, 0.5), (0.0, 0.3)] {
                let rows = sweep(kind, loc, b, c, 101);
                assert_eq!(check_no_sudden_death(&rows), SuddenDeathCheck::NoSuddenDeath, "{loc} {kind} b={b} c={c}");
            }
        }
    }
}

#[test]
fn qutrit_only_residues_survive_full_noise() {
    let (b, c) = (0.1, 0.5);
    let d = (b - c) * (b - c);
    let flip = sweep(ChannelKind::BitFlip, Locality::QutritOnly, b, c, 11);
    let last = flip.last().unwrap();
    assert!((last.d_numeric - d / 12.0).abs() <= 1e-8);
    assert!((last.d_closed - d / 12.0).abs() <= 1e-12);
    let phase_flip = sweep(ChannelKind::BitPhaseFlip, Locality::QutritOnly, b, c, 11);
    assert!((phase_flip.last().unwrap().d_numeric - d / 24.0).abs() <= 1e-8);
}

#[test]
fn repeated_sweeps_are_bitwise_identical() {
    let spec = SweepSpec::time(ChannelKind::Depolarizing, Locality::MultiLocal, 0.2, 0.1, 4.0, 37, 1.0, 0.3);
    let a = run_sweep(&spec).unwrap();
    let b = run_sweep(&spec).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.d_numeric.to_bits(), y.d_numeric.to_bits());
        assert_eq!(x.d_closed.to_bits(), y.d_closed.to_bits());
    }
}
