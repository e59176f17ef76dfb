//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::Command;
use std::time::Instant;

use gmqd::channels::{apply_scenario, qubit_kraus, qutrit_kraus, ChannelKind, Locality, NoiseScenario};
use gmqd::dynamics::{linspace, run_sweep, SweepSpec, ZERO_DISCORD_TOL};
use gmqd::gmqd::{
    closed_form_coefficients, correlation_matrix, gmqd_closed_form, gmqd_dakic_two_qubit, gmqd_numeric, gmqd_oracle,
};
use gmqd::matrix::ComplexMatrix;
use gmqd::states::{initial_state, werner_state, DensityMatrix, TwoParamState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const STATES: [(f64, f64); 5] = [(1.0 / 3.0, 0.0), (0.2, 0.1), (0.1, 0.5), (0.25, 0.05), (0.0, 0.3)];
const SEED: u64 = 2013;

struct Outcome {
    passed: bool,
    detail: String,
}

fn worst_of(errors: impl IntoIterator<Item = (f64, String)>) -> (f64, String, usize) {
    let mut worst = (0.0f64, String::from("-"));
    let mut n = 0;
    for (e, label) in errors {
        n += 1;
        if e > worst.0 || e.is_nan() {
            worst = (e, label);
        }
    }
    (worst.0, worst.1, n)
}

fn at_most(errors: Vec<(f64, String)>, tol: f64) -> Outcome {
    let (w, label, n) = worst_of(errors);
    Outcome {
        passed: w <= tol,
        detail: format!("worst {w:.2e} <= {tol:.0e} over {n} cases (worst at {label})"),
    }
}

fn evolve(b: f64, c: f64, s: &NoiseScenario) -> DensityMatrix {
    apply_scenario(&initial_state(&TwoParamState::from_bc(b, c).unwrap()), s).unwrap()
}

/// Every scenario of one analytic result on an 11-point grid per axis.
fn family_scenarios(name: &str, gammas: &[f64]) -> Vec<NoiseScenario> {
    let mut out = Vec::new();
    match name {
        "noiseless" => out.push(NoiseScenario::noiseless()),
        "qubit-only" => {
            for k in ChannelKind::ALL {
                out.extend(gammas.iter().map(|&g| NoiseScenario::qubit_only(k, g).unwrap()));
            }
        }
        "qutrit-only" => {
            for k in ChannelKind::ALL {
                out.extend(gammas.iter().map(|&g| NoiseScenario::qutrit_only(k, g).unwrap()));
            }
        }
        kind => {
            let k: ChannelKind = kind.parse().unwrap();
            for &ga in gammas {
                out.extend(gammas.iter().map(|&gb| NoiseScenario::multi_local(k, ga, gb).unwrap()));
            }
        }
    }
    out
}

const MULTI_LOCAL: [&str; 5] = ["dephasing", "phase-flip", "bit-flip", "bit-phase-flip", "depolarizing"];

fn criterion_closed_forms() -> Outcome {
    let gammas = linspace(0.0, 1.0, 11);
    let mut families = vec!["noiseless"];
    families.extend(MULTI_LOCAL);
    families.extend(["qubit-only", "qutrit-only"]);
    let mut lines = Vec::new();
    let mut all = true;
    for fam in families {
        let work: Vec<(NoiseScenario, f64, f64)> = family_scenarios(fam, &gammas)
            .into_iter()
            .flat_map(|s| STATES.iter().map(move |&(b, c)| (s, b, c)))
            .collect();
        let errors: Vec<(f64, String)> = work
            .par_iter()
            .map(|(s, b, c)| {
                let e = (gmqd_numeric(&evolve(*b, *c, s)).value - gmqd_closed_form(s, *b, *c)).abs();
                (e, format!("{s:?} b={b} c={c}"))
            })
            .collect();
        let o = at_most(errors, 1e-8);
        all &= o.passed;
        lines.push(format!("{fam}: {}", o.detail));
    }
    Outcome {
        passed: all,
        detail: lines.join("; "),
    }
}

fn criterion_coefficients() -> Outcome {
    let gammas = linspace(0.0, 1.0, 11);
    let mut families = vec!["noiseless"];
    families.extend(MULTI_LOCAL);
    let errors: Vec<(f64, String)> = families
        .iter()
        .flat_map(|f| family_scenarios(f, &gammas))
        .flat_map(|s| STATES.iter().map(move |&(b, c)| (s, b, c)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(s, b, c)| {
            let (i, j, d) = correlation_matrix(&evolve(*b, *c, s)).worst_entry(&closed_form_coefficients(s, *b, *c));
            (d, format!("{s:?} b={b} c={c} c{i}{j}"))
        })
        .collect();
    // sign pattern spot check: trit-phase-flip keeps c36 = -c39
    let s = NoiseScenario::multi_local(ChannelKind::BitPhaseFlip, 0.3, 0.4).unwrap();
    let cm = correlation_matrix(&evolve(0.2, 0.1, &s));
    let sign = (cm.at(3, 6) + cm.at(3, 9)).abs();
    let mut o = at_most(errors, 1e-10);
    o.passed &= sign <= 1e-10 && cm.at(3, 6).abs() > 1e-3;
    o.detail.push_str(&format!("; |c36 + c39| = {sign:.1e} with c36 = {:.4}", cm.at(3, 6)));
    o
}

fn criterion_kraus() -> Outcome {
    let id = ComplexMatrix::identity(6);
    let mut errors = Vec::new();
    for k in ChannelKind::ALL {
        for g in linspace(0.0, 1.0, 21) {
            errors.push((qubit_kraus(k, g).unwrap().completeness().max_abs_diff(&id), format!("qubit {k} {g}")));
            errors.push((qutrit_kraus(k, g).unwrap().completeness().max_abs_diff(&id), format!("qutrit {k} {g}")));
        }
    }
    at_most(errors, 1e-12)
}

fn criterion_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut gap = Vec::new();
    let mut floor = Vec::new();
    for i in 0..20u64 {
        let b = rng.gen_range(0.0..=1.0 / 3.0);
        let c = rng.gen_range(0.0..=1.0 - 3.0 * b);
        let kind = ChannelKind::ALL[rng.gen_range(0..5)];
        let loc = Locality::ALL[rng.gen_range(0..3)];
        let s = NoiseScenario::with_locality(kind, loc, rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0)).unwrap();
        let rho = evolve(b, c, &s);
        let n = gmqd_numeric(&rho).value;
        let o = gmqd_oracle(&rho, 32, SEED + i).value;
        gap.push(((o - n).abs(), format!("{s:?} b={b} c={c}")));
        floor.push((n - o, format!("{s:?} b={b} c={c}")));
    }
    let g = at_most(gap, 1e-4);
    let f = at_most(floor, 1e-6);
    Outcome {
        passed: g.passed && f.passed,
        detail: format!("|oracle - numeric| {}; numeric - oracle {}", g.detail, f.detail),
    }
}

fn criterion_werner() -> Outcome {
    let errors = [0.05, 0.15, 0.25, 1.0 / 3.0]
        .iter()
        .map(|&b| {
            let c = 1.0 - 3.0 * b;
            let want = 0.5 * (b - c) * (b - c);
            let six = gmqd_numeric(&initial_state(&TwoParamState::new(0.0, b, c).unwrap())).value;
            let four = gmqd_dakic_two_qubit(&werner_state(c - b).unwrap()).value;
            ((six - want).abs().max((four - want).abs()), format!("b={b}"))
        })
        .collect();
    at_most(errors, 1e-8)
}

fn criterion_qualitative() -> Outcome {
    // (i) every b != c state, every scenario, interior points only
    let mut specs = Vec::new();
    for k in ChannelKind::ALL {
        for l in Locality::ALL {
            for &(b, c) in &STATES {
                specs.push(SweepSpec::gamma(k, l, b, c, 101));
            }
        }
    }
    let mut min_any = f64::INFINITY;
    let mut min_separated = (f64::INFINITY, String::new());
    for spec in &specs {
        for r in run_sweep(spec).unwrap() {
            if r.gamma_a.max(r.gamma_b) >= 1.0 - 1e-9 {
                continue;
            }
            min_any = min_any.min(r.d_numeric);
            if (spec.b - spec.c).abs() >= 0.2 - 1e-12 && r.d_numeric < min_separated.0 {
                min_separated = (r.d_numeric, format!("{} {} b={} c={}", spec.locality, spec.kind, spec.b, spec.c));
            }
        }
    }
    let no_death = min_any > 0.0 && min_separated.0 > ZERO_DISCORD_TOL;

    // (ii) residues at full qutrit noise
    let mut residue_err = 0.0f64;
    let mut residue_min = f64::INFINITY;
    for &(b, c) in &STATES {
        let d = (b - c) * (b - c);
        for (kind, denom) in [(ChannelKind::BitFlip, 12.0), (ChannelKind::BitPhaseFlip, 24.0)] {
            let v = gmqd_numeric(&evolve(b, c, &NoiseScenario::qutrit_only(kind, 1.0).unwrap())).value;
            residue_err = residue_err.max((v - d / denom).abs());
            residue_min = residue_min.min(v);
        }
    }
    let residues = residue_err <= 1e-8 && residue_min > 0.0;

    // (iii) qubit-only equivalence of the four non-dephasing kinds
    let mut spread = 0.0f64;
    for &(b, c) in &STATES {
        for g in linspace(0.0, 1.0, 11) {
            let vals: Vec<f64> = [ChannelKind::PhaseFlip, ChannelKind::BitFlip, ChannelKind::BitPhaseFlip, ChannelKind::Depolarizing]
                .iter()
                .map(|&k| gmqd_numeric(&evolve(b, c, &NoiseScenario::qubit_only(k, g).unwrap())).value)
                .collect();
            let hi = vals.iter().copied().fold(f64::MIN, f64::max);
            let lo = vals.iter().copied().fold(f64::MAX, f64::min);
            spread = spread.max(hi - lo);
        }
    }
    let equivalence = spread <= 1e-10;

    Outcome {
        passed: no_death && residues && equivalence,
        detail: format!(
            "(i) min interior d_numeric {min_any:.2e} > 0, {:.2e} > {ZERO_DISCORD_TOL:.0e} for |b-c| >= 0.2 ({}) [{}]; \
             (ii) residue error {residue_err:.2e}, smallest residue {residue_min:.2e} [{}]; \
             (iii) qubit-only spread {spread:.2e} [{}]",
            min_separated.0,
            min_separated.1,
            if no_death { "ok" } else { "FAIL" },
            if residues { "ok" } else { "FAIL" },
            if equivalence { "ok" } else { "FAIL" },
        ),
    }
}

fn run_bin(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let o = Command::new(env!("CARGO_BIN_EXE_gmqd"))
        .args(args)
        .output()
        .expect("gmqd binary runs");
    (o.status.code(), o.stdout)
}

fn criterion_determinism() -> Outcome {
    let verify = ["verify", "--quick", "--format", "json"];
    let (c1, r1) = run_bin(&verify);
    let (c2, r2) = run_bin(&verify);
    let sweep = ["sweep", "--channel", "depolarizing", "--b", "0.1", "--c", "0.5", "--points", "101"];
    let (s1, o1) = run_bin(&sweep);
    let (s2, o2) = run_bin(&sweep);
    let reports_same = c1 == Some(0) && c2 == Some(0) && r1 == r2;
    let csv_same = s1 == Some(0) && s2 == Some(0) && o1 == o2;
    Outcome {
        passed: reports_same && csv_same,
        detail: format!(
            "verify reports identical: {reports_same} ({} bytes), sweep CSV byte-identical: {csv_same} ({} bytes)",
            r1.len(),
            o1.len()
        ),
    }
}

type Criterion = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Criterion); 7] = [
        ("1 closed-form reproduction", criterion_closed_forms),
        ("2 coefficient-matrix reproduction", criterion_coefficients),
        ("3 Kraus completeness", criterion_kraus),
        ("4 oracle agreement", criterion_oracle),
        ("5 Werner cross-check", criterion_werner),
        ("6 qualitative claims", criterion_qualitative),
        ("7 determinism", criterion_determinism),
    ];
    let mut failures = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let o = f();
        if !o.passed {
            failures += 1;
        }
        println!(
            "{} criterion {name} ({:.1}s): {}",
            if o.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
