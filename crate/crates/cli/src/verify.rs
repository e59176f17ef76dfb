//! The `verify` suite: every numerical property the library promises, each
//! reduced to a worst-case error against a tolerance.

use gmqd::channels::{apply_scenario, qubit_kraus, qutrit_kraus, ChannelKind, KrausSet, Locality, NoiseScenario};
use gmqd::dynamics::{linspace, run_sweep, SweepSpec, ZERO_DISCORD_TOL};
use gmqd::gmqd::{
    closed_form_coefficients, correlation_matrix, gmqd_closed_form, gmqd_dakic_two_qubit, gmqd_numeric, gmqd_oracle,
    standard_basis,
};
use gmqd::matrix::ComplexMatrix;
use gmqd::states::{initial_state, random_density, werner_state, TwoParamState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{CliError, VERSION};

/// Physical `(b, c)` points used by the grid checks.
pub const STATE_POINTS: [(f64, f64); 5] = [(1.0 / 3.0, 0.0), (0.2, 0.1), (0.1, 0.5), (0.25, 0.05), (0.0, 0.3)];

/// Points with `|b - c| >= 0.2`; closer pairs put the multi-local four-fold
/// factor below the zero-discord threshold before `gamma = 1`.
pub const NO_DEATH_POINTS: [(f64, f64); 4] = [(1.0 / 3.0, 0.0), (0.1, 0.5), (0.25, 0.05), (0.0, 0.3)];

pub const CROSS_METHOD_TOL: f64 = 1e-8;
pub const COEFFICIENT_TOL: f64 = 1e-10;
pub const KRAUS_TOL: f64 = 1e-12;
pub const BASIS_TOL: f64 = 1e-12;
pub const RECONSTRUCTION_TOL: f64 = 1e-10;
pub const ORACLE_GAP_TOL: f64 = 1e-4;
pub const ORACLE_FLOOR_TOL: f64 = 1e-6;
pub const EQUIVALENCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub quick: bool,
    pub seed: u64,
    pub restarts: usize,
    /// Closed-form family label to perturb.
    pub fault: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Passes when the worst error is at most the tolerance.
    AtMost,
    /// Passes when the smallest value stays strictly above the tolerance.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub bound: Bound,
    pub tolerance: f64,
    pub worst: f64,
    pub worst_case: String,
    pub cases: usize,
}

impl Check {
    fn from_cases(name: impl Into<String>, bound: Bound, tolerance: f64, cases: Vec<(f64, String)>) -> Self {
        let n = cases.len();
        let mut worst: Option<(f64, String)> = None;
        for (v, label) in cases {
            let replace = match &worst {
                None => true,
                Some((w, _)) => {
                    v.is_nan()
                        || match bound {
                            Bound::AtMost => v > *w,
                            Bound::Above => v < *w,
                        }
                }
            };
            if replace && !worst.as_ref().is_some_and(|(w, _)| w.is_nan()) {
                worst = Some((v, label));
            }
        }
        let (worst, worst_case) = worst.unwrap_or((f64::NAN, "no cases".into()));
        let passed = match bound {
            Bound::AtMost => worst <= tolerance,
            Bound::Above => worst > tolerance,
        };
        Self {
            name: name.into(),
            passed,
            bound,
            tolerance,
            worst,
            worst_case,
            cases: n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub restarts: usize,
    pub quick: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injected_fault: Option<String>,
    pub passed: bool,
    /// Largest |numeric - closed form| over all closed-form checks.
    pub max_cross_method_error: f64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failed_checks(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect()
    }

    pub fn render_text(&self) -> String {
        let mut s = format!(
            "gmqd {} verify: seed {}, {} oracle restarts, {} grid\n",
            self.version,
            self.seed,
            self.restarts,
            if self.quick { "quick" } else { "full" }
        );
        if let Some(f) = &self.injected_fault {
            s.push_str(&format!("injected fault: {f}\n"));
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let op = match c.bound {
                Bound::AtMost => "<=",
                Bound::Above => ">",
            };
            s.push_str(&format!(
                "{} {:<width$}  worst {:.3e} (need {op} {:.0e}, {} cases)\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.worst,
                c.tolerance,
                c.cases,
            ));
            if !c.passed {
                s.push_str(&format!("     worst offender: {}\n", c.worst_case));
            }
        }
        s.push_str(&format!("max cross-method error: {:.3e}\n", self.max_cross_method_error));
        let failed = self.failed_checks();
        if failed.is_empty() {
            s.push_str(&format!("all {} checks passed\n", self.checks.len()));
        } else {
            s.push_str(&format!(
                "{} of {} checks failed: {}\n",
                failed.len(),
                self.checks.len(),
                failed.join(", ")
            ));
        }
        s
    }
}

/// One analytic GMQD result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Noiseless,
    MultiLocal(ChannelKind),
    QubitOnly,
    QutritOnly,
}

impl Family {
    pub fn all() -> Vec<Family> {
        let mut v = vec![Family::Noiseless];
        v.extend(ChannelKind::ALL.map(Family::MultiLocal));
        v.push(Family::QubitOnly);
        v.push(Family::QutritOnly);
        v
    }

    pub fn label(self) -> String {
        match self {
            Family::Noiseless => "noiseless".into(),
            Family::MultiLocal(k) => format!("multi-local {k}"),
            Family::QubitOnly => "qubit-only".into(),
            Family::QutritOnly => "qutrit-only".into(),
        }
    }

    /// Families with a dedicated coefficient table.
    fn has_coefficient_table(self) -> bool {
        matches!(self, Family::Noiseless | Family::MultiLocal(_))
    }

    fn scenarios(self, gammas: &[f64]) -> Vec<NoiseScenario> {
        let ok = |r: gmqd::Result<NoiseScenario>| r.expect("grid strengths lie in [0, 1]");
        match self {
            Family::Noiseless => vec![NoiseScenario::noiseless()],
            Family::MultiLocal(k) => gammas
                .iter()
                .flat_map(|&ga| gammas.iter().map(move |&gb| ok(NoiseScenario::multi_local(k, ga, gb))))
                .collect(),
            Family::QubitOnly => ChannelKind::ALL
                .iter()
                .flat_map(|&k| gammas.iter().map(move |&g| ok(NoiseScenario::qubit_only(k, g))))
                .collect(),
            Family::QutritOnly => ChannelKind::ALL
                .iter()
                .flat_map(|&k| gammas.iter().map(move |&g| ok(NoiseScenario::qutrit_only(k, g))))
                .collect(),
        }
    }
}

fn describe(s: &NoiseScenario, b: f64, c: f64) -> String {
    format!(
        "{} {} b={b} c={c} gamma_a={} gamma_b={}",
        s.locality(),
        s.kind(),
        s.gamma_a(),
        s.gamma_b()
    )
}

fn state(b: f64, c: f64) -> TwoParamState {
    TwoParamState::from_bc(b, c).expect("fixed grid points are physical")
}

struct Grid {
    states: Vec<(f64, f64)>,
    gammas: Vec<f64>,
    sweep_points: usize,
    reconstruction_samples: usize,
    oracle_triples: usize,
}

impl Grid {
    fn new(quick: bool) -> Self {
        if quick {
            Self {
                states: vec![STATE_POINTS[0], STATE_POINTS[2]],
                gammas: linspace(0.0, 1.0, 4),
                sweep_points: 21,
                reconstruction_samples: 50,
                oracle_triples: 4,
            }
        } else {
            Self {
                states: STATE_POINTS.to_vec(),
                gammas: linspace(0.0, 1.0, 11),
                sweep_points: 101,
                reconstruction_samples: 200,
                oracle_triples: 20,
            }
        }
    }
}

pub fn run_verification(opts: &VerifyOptions) -> Result<VerifyReport, CliError> {
    let fault = match &opts.fault {
        None => None,
        Some(label) => Some(Family::all().into_iter().find(|f| f.label() == *label).ok_or_else(|| {
            let known: Vec<String> = Family::all().into_iter().map(Family::label).collect();
            CliError::Input(format!("unknown fault label `{label}`; expected one of: {}", known.join(", ")))
        })?),
    };
    if opts.restarts == 0 {
        return Err(CliError::Input("--restarts must be at least 1".into()));
    }
    let grid = Grid::new(opts.quick);

    let mut checks = vec![kraus_completeness(), basis_orthonormality(), reconstruction(&grid, opts.seed)];
    let closed: Vec<Check> = Family::all()
        .into_iter()
        .map(|f| closed_form_check(f, &grid, fault == Some(f)))
        .collect();
    let max_cross_method_error = closed.iter().map(|c| c.worst).fold(0.0, f64::max);
    checks.extend(closed);
    checks.extend(
        Family::all()
            .into_iter()
            .filter(|f| f.has_coefficient_table())
            .map(|f| coefficient_check(f, &grid, fault == Some(f))),
    );
    checks.extend(oracle_checks(&grid, opts.seed, opts.restarts));
    checks.push(werner_check());
    checks.push(no_sudden_death(&grid));
    checks.extend(asymptote_checks(&grid));
    checks.push(qubit_only_equivalence(&grid));

    Ok(VerifyReport {
        tool: "gmqd",
        version: VERSION,
        seed: opts.seed,
        restarts: opts.restarts,
        quick: opts.quick,
        injected_fault: opts.fault.clone(),
        passed: checks.iter().all(|c| c.passed),
        max_cross_method_error,
        checks,
    })
}

fn kraus_completeness() -> Check {
    let gammas = linspace(0.0, 1.0, 21);
    let id = ComplexMatrix::identity(6);
    let mut cases = Vec::new();
    for kind in ChannelKind::ALL {
        for &g in &gammas {
            let sets: [KrausSet; 2] = [
                qubit_kraus(kind, g).expect("gamma in range"),
                qutrit_kraus(kind, g).expect("gamma in range"),
            ];
            for set in sets {
                let err = set.completeness().max_abs_diff(&id);
                cases.push((err, format!("{:?} {kind} gamma={g}", set.subsystem())));
            }
        }
    }
    Check::from_cases("kraus completeness", Bound::AtMost, KRAUS_TOL, cases)
}

fn orthonormality_errors(ops: &[ComplexMatrix], tag: &str) -> Vec<(f64, String)> {
    let mut out = Vec::new();
    for (i, x) in ops.iter().enumerate() {
        for (j, y) in ops.iter().enumerate() {
            let ip = x.hs_inner(y).expect("same shape");
            let want = if i == j { 1.0 } else { 0.0 };
            out.push(((ip.re - want).abs().max(ip.im.abs()), format!("{tag} ({}, {})", i + 1, j + 1)));
        }
    }
    out
}

fn basis_orthonormality() -> Check {
    let b = standard_basis();
    let mut cases = orthonormality_errors(&b.x_ops, "qubit");
    cases.extend(orthonormality_errors(&b.y_ops, "qutrit"));
    Check::from_cases("basis orthonormality", Bound::AtMost, BASIS_TOL, cases)
}

fn reconstruction(grid: &Grid, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = (0..grid.reconstruction_samples)
        .map(|i| {
            let rho = random_density(&mut rng, 6);
            let back = correlation_matrix(&rho).reconstruct();
            (back.max_abs_diff(rho.matrix()), format!("random state #{i}"))
        })
        .collect();
    Check::from_cases("correlation-matrix reconstruction", Bound::AtMost, RECONSTRUCTION_TOL, cases)
}

fn perturbed(v: f64) -> f64 {
    v * 1.001 + 1e-6
}

fn closed_form_check(family: Family, grid: &Grid, fault: bool) -> Check {
    let work: Vec<(NoiseScenario, f64, f64)> = family
        .scenarios(&grid.gammas)
        .into_iter()
        .flat_map(|s| grid.states.iter().map(move |&(b, c)| (s, b, c)))
        .collect();
    let cases = work
        .par_iter()
        .map(|&(s, b, c)| {
            let rho = apply_scenario(&initial_state(&state(b, c)), &s).expect("valid scenario");
            let mut closed = gmqd_closed_form(&s, b, c);
            if fault {
                closed = perturbed(closed);
            }
            ((gmqd_numeric(&rho).value - closed).abs(), describe(&s, b, c))
        })
        .collect();
    Check::from_cases(
        format!("closed-form {}", family.label()),
        Bound::AtMost,
        CROSS_METHOD_TOL,
        cases,
    )
}

fn coefficient_check(family: Family, grid: &Grid, fault: bool) -> Check {
    let gammas = linspace(0.0, 1.0, 11);
    let work: Vec<(NoiseScenario, f64, f64)> = family
        .scenarios(&gammas)
        .into_iter()
        .flat_map(|s| grid.states.iter().map(move |&(b, c)| (s, b, c)))
        .collect();
    let cases = work
        .par_iter()
        .map(|&(s, b, c)| {
            let rho = apply_scenario(&initial_state(&state(b, c)), &s).expect("valid scenario");
            let mut table = closed_form_coefficients(&s, b, c);
            if fault {
                table.set(2, 2, table.at(2, 2) + 1e-3);
            }
            let (i, j, d) = correlation_matrix(&rho).worst_entry(&table);
            (d, format!("{} entry c{i}{j}", describe(&s, b, c)))
        })
        .collect();
    Check::from_cases(
        format!("coefficients {}", family.label()),
        Bound::AtMost,
        COEFFICIENT_TOL,
        cases,
    )
}

/// Random physical `(b, c)` and a random scenario; the idle strength is
/// zeroed for local noise.
pub fn sample_triple<R: Rng>(rng: &mut R) -> (TwoParamState, NoiseScenario) {
    let b = rng.gen_range(0.0..=1.0 / 3.0);
    let c = rng.gen_range(0.0..=1.0 - 3.0 * b);
    let kind = ChannelKind::ALL[rng.gen_range(0..ChannelKind::ALL.len())];
    let locality = Locality::ALL[rng.gen_range(0..Locality::ALL.len())];
    let (ga, gb) = (rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0));
    (
        TwoParamState::from_bc(b, c).expect("sampled inside the physical region"),
        NoiseScenario::with_locality(kind, locality, ga, gb).expect("sampled strengths lie in [0, 1]"),
    )
}

fn oracle_checks(grid: &Grid, seed: u64, restarts: usize) -> [Check; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<_> = (0..grid.oracle_triples).map(|_| sample_triple(&mut rng)).collect();
    let results: Vec<(f64, f64, String)> = triples
        .iter()
        .enumerate()
        .map(|(i, (st, s))| {
            let rho = apply_scenario(&initial_state(st), s).expect("valid scenario");
            let numeric = gmqd_numeric(&rho).value;
            let oracle = gmqd_oracle(&rho, restarts, seed.wrapping_add(i as u64)).value;
            (numeric, oracle, describe(s, st.b(), st.c()))
        })
        .collect();
    let gap = results.iter().map(|(n, o, d)| ((o - n).abs(), d.clone())).collect();
    let floor = results.iter().map(|(n, o, d)| (n - o, d.clone())).collect();
    [
        Check::from_cases("oracle agreement", Bound::AtMost, ORACLE_GAP_TOL, gap),
        Check::from_cases("oracle never below numeric", Bound::AtMost, ORACLE_FLOOR_TOL, floor),
    ]
}

fn werner_check() -> Check {
    let cases = [0.05, 0.15, 0.25, 1.0 / 3.0]
        .iter()
        .map(|&b| {
            let c = 1.0 - 3.0 * b;
            let expected = 0.5 * (b - c) * (b - c);
            let six = gmqd_numeric(&initial_state(&state(b, c))).value;
            let w = werner_state(c - b).expect("z = c - b is a valid Werner parameter");
            let four = gmqd_dakic_two_qubit(&w).value;
            let err = (six - expected).abs().max((four - expected).abs()).max((six - four).abs());
            (err, format!("b={b} c={c}"))
        })
        .collect();
    Check::from_cases("werner embedding", Bound::AtMost, CROSS_METHOD_TOL, cases)
}

/// Smallest numeric GMQD strictly before full-strength noise, over every
/// channel, locality and `b != c` state.
fn no_sudden_death(grid: &Grid) -> Check {
    let mut specs = Vec::new();
    for kind in ChannelKind::ALL {
        for loc in Locality::ALL {
            for &(b, c) in &NO_DEATH_POINTS {
                specs.push(SweepSpec::gamma(kind, loc, b, c, grid.sweep_points));
            }
        }
    }
    let cases = specs
        .iter()
        .flat_map(|spec| {
            let rows = run_sweep(spec).expect("valid sweep");
            rows.into_iter()
                .filter(|r| r.gamma_a.max(r.gamma_b) < 1.0 - 1e-9)
                .map(|r| {
                    (
                        r.d_numeric,
                        format!("{} {} b={} c={} gamma={}", spec.locality, spec.kind, spec.b, spec.c, r.gamma_a.max(r.gamma_b)),
                    )
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Check::from_cases("no sudden death", Bound::Above, ZERO_DISCORD_TOL, cases)
}

fn asymptote_checks(grid: &Grid) -> [Check; 2] {
    let one = |kind: ChannelKind, denom: f64, name: &str| {
        let s = NoiseScenario::qutrit_only(kind, 1.0).expect("gamma = 1 is valid");
        let cases = grid
            .states
            .iter()
            .map(|&(b, c)| {
                let rho = apply_scenario(&initial_state(&state(b, c)), &s).expect("valid scenario");
                let want = (b - c) * (b - c) / denom;
                ((gmqd_numeric(&rho).value - want).abs(), format!("b={b} c={c}"))
            })
            .collect();
        Check::from_cases(name, Bound::AtMost, CROSS_METHOD_TOL, cases)
    };
    [
        one(ChannelKind::BitFlip, 12.0, "residue qutrit-only bit-flip"),
        one(ChannelKind::BitPhaseFlip, 24.0, "residue qutrit-only bit-phase-flip"),
    ]
}

fn qubit_only_equivalence(grid: &Grid) -> Check {
    let gammas = linspace(0.0, 1.0, 11);
    let kinds = [
        ChannelKind::PhaseFlip,
        ChannelKind::BitFlip,
        ChannelKind::BitPhaseFlip,
        ChannelKind::Depolarizing,
    ];
    let mut cases = Vec::new();
    for &(b, c) in &grid.states {
        let rho0 = initial_state(&state(b, c));
        for &g in &gammas {
            let values: Vec<f64> = kinds
                .iter()
                .map(|&k| {
                    let s = NoiseScenario::qubit_only(k, g).expect("gamma in range");
                    gmqd_numeric(&apply_scenario(&rho0, &s).expect("valid scenario")).value
                })
                .collect();
            let hi = values.iter().copied().fold(f64::MIN, f64::max);
            let lo = values.iter().copied().fold(f64::MAX, f64::min);
            cases.push((hi - lo, format!("b={b} c={c} gamma_a={g}")));
        }
    }
    Check::from_cases("qubit-only channel equivalence", Bound::AtMost, EQUIVALENCE_TOL, cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_case_selection() {
        let c = Check::from_cases("x", Bound::AtMost, 1.0, vec![(0.5, "a".into()), (2.0, "b".into()), (1.0, "c".into())]);
        assert!(!c.passed);
        assert_eq!(c.worst_case, "b");
        let c = Check::from_cases("y", Bound::Above, 0.1, vec![(0.5, "a".into()), (0.2, "b".into())]);
        assert!(c.passed);
        assert_eq!(c.worst, 0.2);
        let c = Check::from_cases("z", Bound::AtMost, 1.0, vec![(0.5, "a".into()), (f64::NAN, "nan".into()), (9.0, "b".into())]);
        assert!(!c.passed);
        assert_eq!(c.worst_case, "nan");
    }

    #[test]
    fn family_labels_are_unique() {
        let labels: Vec<String> = Family::all().into_iter().map(Family::label).collect();
        assert_eq!(labels.len(), 8);
        let mut dedup = labels.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
    }

    #[test]
    fn unknown_fault_is_bad_input() {
        let opts = VerifyOptions {
            quick: true,
            seed: 1,
            restarts: 1,
            fault: Some("nonsense".into()),
        };
        assert_eq!(run_verification(&opts).unwrap_err().exit_code(), 2);
    }
}
