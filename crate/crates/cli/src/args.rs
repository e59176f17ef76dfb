use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gmqd::channels::{ChannelKind, Locality};
use gmqd::dynamics::{DEFAULT_POINTS, DEFAULT_RATE, DEFAULT_T_MAX};
use gmqd::gmqd::{DEFAULT_RESTARTS, DEFAULT_SEED};

use crate::CliError;

/// Default state: the `a = 0` point `(b, c) = (1/3, 0)`.
pub const DEFAULT_B: f64 = 1.0 / 3.0;
pub const DEFAULT_C: f64 = 0.0;

#[derive(Debug, Parser)]
#[command(name = "gmqd", version, about = "Geometric quantum discord of qubit-qutrit states under noise")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Read flags from FILE (one flag per line, e.g. `--b 0.2` or `b = 0.2`);
    /// flags given on the command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate GMQD for one state and noise setting.
    Compute(ComputeArgs),
    /// Tabulate GMQD over a noise-strength or time grid.
    Sweep(SweepArgs),
    /// Run the numerical verification suite.
    Verify(VerifyArgs),
    /// List channel and locality names.
    Channels(ChannelsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    Gamma,
    Time,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CouplingArg {
    Equal,
    Independent,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Weight of the phi+, phi- and psi+ projectors.
    #[arg(long, default_value_t = DEFAULT_B, allow_negative_numbers = true)]
    pub b: f64,
    /// Weight of the psi- projector.
    #[arg(long, default_value_t = DEFAULT_C, allow_negative_numbers = true)]
    pub c: f64,
    /// Weight of |02> and |12>; derived from 2a+3b+c=1 when omitted.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, default_value = "dephasing")]
    pub channel: ChannelKind,
    #[arg(long, default_value = "multi-local")]
    pub locality: Locality,
    /// Qubit noise strength in [0, 1].
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gamma_a: f64,
    /// Qutrit noise strength in [0, 1].
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gamma_b: f64,
    /// Elapsed time; strengths then follow 1 - exp(-t * rate).
    #[arg(long, conflicts_with_all = ["gamma_a", "gamma_b"], allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_RATE, allow_negative_numbers = true)]
    pub rate_a: f64,
    #[arg(long, default_value_t = DEFAULT_RATE, allow_negative_numbers = true)]
    pub rate_b: f64,
    /// Also run the brute-force zero-discord search.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    pub restarts: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, default_value = "dephasing")]
    pub channel: ChannelKind,
    #[arg(long, default_value = "multi-local")]
    pub locality: Locality,
    #[arg(long, value_enum, default_value_t = AxisArg::Gamma)]
    pub axis: AxisArg,
    #[arg(long, value_enum, default_value_t = CouplingArg::Equal)]
    pub coupling: CouplingArg,
    /// Grid size per axis [default: 101, or 33 for independent coupling].
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    pub t_max: f64,
    #[arg(long, default_value_t = DEFAULT_RATE, allow_negative_numbers = true)]
    pub rate_a: f64,
    #[arg(long, default_value_t = DEFAULT_RATE, allow_negative_numbers = true)]
    pub rate_b: f64,
    /// Recorded in the output metadata.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

impl SweepArgs {
    pub fn grid_points(&self) -> usize {
        self.points.unwrap_or(match self.coupling {
            CouplingArg::Equal => DEFAULT_POINTS,
            CouplingArg::Independent => gmqd::dynamics::SURFACE_POINTS,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Reduced grids for a fast smoke run.
    #[arg(long)]
    pub quick: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    pub restarts: usize,
    /// Write the JSON report here as well.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Perturb one closed-form family to exercise the failure path.
    #[arg(long, hide = true, value_name = "LABEL")]
    pub inject_fault: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ChannelsArgs {
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

const SUBCOMMANDS: [&str; 4] = ["compute", "sweep", "verify", "channels"];

/// Splices flags from a `--config` file in right after the subcommand name,
/// so that flags on the real command line (which come later) win.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let strings: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let mut path = None;
    for (i, a) in strings.iter().enumerate() {
        if a == "--config" {
            path = strings.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let extra = read_config(Path::new(&path))?;
    let Some(pos) = strings.iter().position(|a| SUBCOMMANDS.contains(&a.as_str())) else {
        return Ok(args);
    };
    let mut out = args;
    let tail = out.split_off(pos + 1);
    out.extend(extra.into_iter().map(OsString::from));
    out.extend(tail);
    Ok(out)
}

fn read_config(path: &Path) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Vec<String>, CliError> {
    let mut tokens = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, value) = match line.split_once(['=', ' ', '\t']) {
            Some((k, v)) => (k.trim(), Some(v.trim().trim_start_matches('=').trim())),
            None => (line, None),
        };
        let name = name.trim_start_matches("--");
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(CliError::Input(format!("config line {}: cannot parse `{raw}`", n + 1)));
        }
        if name == "config" {
            return Err(CliError::Input(format!("config line {}: nested --config is not supported", n + 1)));
        }
        tokens.push(format!("--{name}"));
        if let Some(v) = value.filter(|v| !v.is_empty()) {
            tokens.push(v.to_string());
        }
    }
    Ok(tokens)
}
