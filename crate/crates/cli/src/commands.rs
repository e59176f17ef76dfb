use std::io::Write;

use gmqd::channels::{apply_scenario, gamma_of_t, qubit_kraus, qutrit_kraus, ChannelKind, Locality, NoiseScenario};
use gmqd::dynamics::{run_sweep, Coupling, SweepAxis, SweepRow, SweepSpec};
use gmqd::gmqd::{gmqd_closed_form, gmqd_numeric, gmqd_oracle};
use gmqd::states::{initial_state, TwoParamState};
use serde::Serialize;

use crate::args::{AxisArg, ChannelsArgs, ComputeArgs, CouplingArg, Format, ReportFormat, StateArgs, SweepArgs, VerifyArgs};
use crate::output::{csv_row, fmt_f64, metadata_lines, CSV_HEADER};
use crate::verify::{run_verification, VerifyOptions};
use crate::{emit, CliError, VERSION};

fn resolve_state(s: &StateArgs) -> Result<TwoParamState, CliError> {
    Ok(match s.a {
        Some(a) => TwoParamState::new(a, s.b, s.c)?,
        None => TwoParamState::from_bc(s.b, s.c)?,
    })
}

#[derive(Debug, Serialize)]
struct ComputeRecord {
    tool: &'static str,
    version: &'static str,
    b: f64,
    c: f64,
    a: f64,
    scenario: NoiseScenario,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    gamma_a: f64,
    gamma_b: f64,
    d_numeric: f64,
    d_closed: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    d_oracle: Option<f64>,
    argmax_theta: f64,
    argmax_phi: f64,
    abs_err: f64,
    clamped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    restarts: Option<usize>,
    seed: u64,
}

pub(crate) fn compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let state = resolve_state(&args.state)?;
    let scenario = match args.t {
        Some(t) => NoiseScenario::with_locality(
            args.channel,
            args.locality,
            gamma_of_t(t, args.rate_a)?,
            gamma_of_t(t, args.rate_b)?,
        )?,
        None => NoiseScenario::new(args.channel, args.locality, args.gamma_a, args.gamma_b)?,
    };
    if args.oracle && args.restarts == 0 {
        return Err(CliError::Input("--restarts must be at least 1".into()));
    }
    let rho = apply_scenario(&initial_state(&state), &scenario)?;
    let numeric = gmqd_numeric(&rho);
    let d_closed = gmqd_closed_form(&scenario, state.b(), state.c());
    let oracle = args.oracle.then(|| gmqd_oracle(&rho, args.restarts, args.seed));
    let argmax = numeric.argmax.expect("numeric route reports its basis");

    let rec = ComputeRecord {
        tool: "gmqd",
        version: VERSION,
        b: state.b(),
        c: state.c(),
        a: state.a(),
        scenario,
        t: args.t,
        gamma_a: scenario.gamma_a(),
        gamma_b: scenario.gamma_b(),
        d_numeric: numeric.value,
        d_closed,
        d_oracle: oracle.map(|o| o.value),
        argmax_theta: argmax.theta,
        argmax_phi: argmax.phi,
        abs_err: (numeric.value - d_closed).abs(),
        clamped: numeric.clamped,
        restarts: args.oracle.then_some(args.restarts),
        seed: args.seed,
    };

    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&rec).expect("record serializes") + "\n",
        Format::Csv => {
            let mut meta = vec![
                ("tool", "gmqd".to_string()),
                ("version", VERSION.to_string()),
                ("command", "compute".to_string()),
                ("a", fmt_f64(rec.a)),
                ("argmax_theta", fmt_f64(rec.argmax_theta)),
                ("argmax_phi", fmt_f64(rec.argmax_phi)),
                ("seed", args.seed.to_string()),
            ];
            if let Some(o) = rec.d_oracle {
                meta.push(("restarts", args.restarts.to_string()));
                meta.push(("d_oracle", fmt_f64(o)));
            }
            let row = SweepRow {
                t: args.t,
                gamma_a: rec.gamma_a,
                gamma_b: rec.gamma_b,
                d_numeric: rec.d_numeric,
                d_closed: rec.d_closed,
                abs_err: rec.abs_err,
            };
            format!(
                "{}{CSV_HEADER}\n{}\n",
                metadata_lines(&meta),
                csv_row(&row, args.channel, args.locality, rec.b, rec.c)
            )
        }
    };
    emit(args.output.as_deref(), &text, out)
}

fn sweep_spec(args: &SweepArgs, state: &TwoParamState) -> Result<SweepSpec, CliError> {
    let n = args.grid_points();
    if n == 0 {
        return Err(CliError::Input("--points must be at least 1".into()));
    }
    let (b, c) = (state.b(), state.c());
    let spec = match (args.axis, args.coupling) {
        (AxisArg::Gamma, CouplingArg::Equal) => SweepSpec::gamma(args.channel, args.locality, b, c, n),
        (AxisArg::Gamma, CouplingArg::Independent) => {
            if args.locality != Locality::MultiLocal {
                return Err(CliError::Input(format!(
                    "independent coupling needs two noisy subsystems, but locality is {}",
                    args.locality
                )));
            }
            SweepSpec::surface(args.channel, b, c, n)
        }
        (AxisArg::Time, CouplingArg::Equal) => {
            if args.t_max <= 0.0 || !args.t_max.is_finite() {
                return Err(CliError::Input(format!("--t-max must be positive and finite, got {}", args.t_max)));
            }
            SweepSpec::time(args.channel, args.locality, b, c, args.t_max, n, args.rate_a, args.rate_b)
        }
        (AxisArg::Time, CouplingArg::Independent) => {
            return Err(CliError::Input(
                "independent coupling applies to the gamma axis; on the time axis use --rate-a/--rate-b".into(),
            ))
        }
    };
    Ok(spec)
}

fn sweep_metadata(args: &SweepArgs, spec: &SweepSpec, state: &TwoParamState) -> Vec<(&'static str, String)> {
    let mut meta = vec![
        ("tool", "gmqd".to_string()),
        ("version", VERSION.to_string()),
        ("command", "sweep".to_string()),
        ("channel", spec.kind.name().to_string()),
        ("locality", spec.locality.name().to_string()),
        ("b", fmt_f64(state.b())),
        ("c", fmt_f64(state.c())),
        ("a", fmt_f64(state.a())),
    ];
    match spec.axis {
        SweepAxis::Gamma => meta.push(("axis", "gamma".into())),
        SweepAxis::Time { rate_a, rate_b } => {
            meta.push(("axis", "time".into()));
            meta.push(("t_max", fmt_f64(args.t_max)));
            meta.push(("rate_a", fmt_f64(rate_a)));
            meta.push(("rate_b", fmt_f64(rate_b)));
        }
    }
    let coupling = match spec.coupling {
        Coupling::Equal => "equal",
        Coupling::Independent => "independent",
    };
    meta.push(("coupling", coupling.into()));
    meta.push(("points", spec.grid.len().to_string()));
    meta.push(("seed", args.seed.to_string()));
    meta
}

pub(crate) fn sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let state = resolve_state(&args.state)?;
    let spec = sweep_spec(args, &state)?;
    let rows = run_sweep(&spec)?;
    let meta = sweep_metadata(args, &spec, &state);
    let text = match args.format {
        Format::Csv => {
            let mut s = metadata_lines(&meta);
            s.push_str(CSV_HEADER);
            s.push('\n');
            for r in &rows {
                s.push_str(&csv_row(r, spec.kind, spec.locality, state.b(), state.c()));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let meta: serde_json::Map<String, serde_json::Value> = meta
                .into_iter()
                .map(|(k, v)| (k.to_string(), serde_json::Value::String(v)))
                .collect();
            let doc = serde_json::json!({ "meta": meta, "rows": rows });
            serde_json::to_string_pretty(&doc).expect("document serializes") + "\n"
        }
    };
    emit(args.output.as_deref(), &text, out)
}

pub(crate) fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let opts = VerifyOptions {
        quick: args.quick,
        seed: args.seed,
        restarts: args.restarts,
        fault: args.inject_fault.clone(),
    };
    let report = run_verification(&opts)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    if let Some(path) = &args.output {
        emit(Some(path), &json, out)?;
    }
    let shown = match args.format {
        ReportFormat::Text => report.render_text(),
        ReportFormat::Json => json,
    };
    emit(None, &shown, out)?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Verification(report.failed_checks()))
    }
}

#[derive(Debug, Serialize)]
struct ChannelInfo {
    name: &'static str,
    qubit_ops: usize,
    qutrit_ops: usize,
}

#[derive(Debug, Serialize)]
struct ChannelListing {
    channels: Vec<ChannelInfo>,
    localities: Vec<&'static str>,
}

pub(crate) fn channels(args: &ChannelsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut channels = Vec::new();
    for kind in ChannelKind::ALL {
        channels.push(ChannelInfo {
            name: kind.name(),
            qubit_ops: qubit_kraus(kind, 0.5)?.ops().len(),
            qutrit_ops: qutrit_kraus(kind, 0.5)?.ops().len(),
        });
    }
    let listing = ChannelListing {
        channels,
        localities: Locality::ALL.iter().map(|l| l.name()).collect(),
    };
    let text = match args.format {
        ReportFormat::Json => serde_json::to_string_pretty(&listing).expect("listing serializes") + "\n",
        ReportFormat::Text => {
            let mut s = String::from("channels:\n");
            for c in &listing.channels {
                s.push_str(&format!(
                    "  {:<16} qubit Kraus ops: {}, qutrit Kraus ops: {}\n",
                    c.name, c.qubit_ops, c.qutrit_ops
                ));
            }
            s.push_str("localities:\n");
            for l in &listing.localities {
                s.push_str(&format!("  {l}\n"));
            }
            s
        }
    };
    emit(None, &text, out)
}
