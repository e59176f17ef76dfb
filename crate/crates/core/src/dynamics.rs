//! GMQD along noise-strength and time grids, with the numeric value and the
//! analytic value side by side.

use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{apply_scenario, gamma_of_t, ChannelKind, Locality, NoiseScenario};
use crate::error::{Error, Result};
use crate::gmqd::{gmqd_closed_form, gmqd_numeric};
use crate::states::{initial_state, TwoParamState};

pub const DEFAULT_POINTS: usize = 101;
pub const DEFAULT_T_MAX: f64 = 5.0;
pub const DEFAULT_RATE: f64 = 1.0;
pub const SURFACE_POINTS: usize = 33;

/// A row counts as zero discord at or below this value.
pub const ZERO_DISCORD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Gamma,
    /// `gamma = 1 - exp(-t * rate)` per subsystem.
    Time { rate_a: f64, rate_b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// One grid value drives both subsystems (on the time axis each still
    /// uses its own rate).
    Equal,
    /// Cartesian product of the grid with itself, `gamma_a` outer. On the
    /// time axis this is identical to `Equal`.
    Independent,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub kind: ChannelKind,
    pub locality: Locality,
    pub b: f64,
    pub c: f64,
    pub axis: SweepAxis,
    pub grid: Vec<f64>,
    pub coupling: Coupling,
}

impl SweepSpec {
    /// `n` evenly spaced strengths over `[0, 1]`.
    pub fn gamma(kind: ChannelKind, locality: Locality, b: f64, c: f64, n: usize) -> Self {
        Self {
            kind,
            locality,
            b,
            c,
            axis: SweepAxis::Gamma,
            grid: linspace(0.0, 1.0, n),
            coupling: Coupling::Equal,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn time(kind: ChannelKind, locality: Locality, b: f64, c: f64, t_max: f64, n: usize, rate_a: f64, rate_b: f64) -> Self {
        Self {
            kind,
            locality,
            b,
            c,
            axis: SweepAxis::Time { rate_a, rate_b },
            grid: linspace(0.0, t_max, n),
            coupling: Coupling::Equal,
        }
    }

    /// Two independent strengths on an `n x n` grid.
    pub fn surface(kind: ChannelKind, b: f64, c: f64, n: usize) -> Self {
        Self {
            coupling: Coupling::Independent,
            ..Self::gamma(kind, Locality::MultiLocal, b, c, n)
        }
    }

    fn validate(&self) -> Result<TwoParamState> {
        let state = TwoParamState::from_bc(self.b, self.c)?;
        if self.grid.is_empty() {
            return Err(Error::InvalidSweep("grid is empty".into()));
        }
        if self.grid.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
            return Err(Error::InvalidSweep("grid must be strictly increasing".into()));
        }
        let (lo, hi) = (self.grid[0], self.grid[self.grid.len() - 1]);
        match self.axis {
            SweepAxis::Gamma if lo < 0.0 || hi > 1.0 => {
                Err(Error::InvalidSweep(format!("gamma grid [{lo}, {hi}] leaves [0, 1]")))
            }
            SweepAxis::Time { .. } if lo < 0.0 || !hi.is_finite() => {
                Err(Error::InvalidSweep(format!("time grid [{lo}, {hi}] must be finite and non-negative")))
            }
            SweepAxis::Time { rate_a, rate_b } if !(rate_a >= 0.0 && rate_b >= 0.0) => {
                Err(Error::InvalidSweep("decay rates must be non-negative".into()))
            }
            _ => Ok(state),
        }
    }

    /// `(t, gamma_a, gamma_b)` for every point, in output order.
    fn points(&self) -> Result<Vec<(Option<f64>, f64, f64)>> {
        match (self.axis, self.coupling) {
            (SweepAxis::Gamma, Coupling::Equal) => Ok(self.grid.iter().map(|&g| (None, g, g)).collect()),
            (SweepAxis::Gamma, Coupling::Independent) => Ok(self
                .grid
                .iter()
                .flat_map(|&ga| self.grid.iter().map(move |&gb| (None, ga, gb)))
                .collect()),
            (SweepAxis::Time { rate_a, rate_b }, _) => self
                .grid
                .iter()
                .map(|&t| Ok((Some(t), gamma_of_t(t, rate_a)?, gamma_of_t(t, rate_b)?)))
                .collect(),
        }
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub t: Option<f64>,
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub d_numeric: f64,
    pub d_closed: f64,
    pub abs_err: f64,
}

/// Evolves the state at every grid point and measures its GMQD. Rows come
/// back in grid order; points are evaluated in parallel.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let state = spec.validate()?;
    let rho0 = initial_state(&state);
    spec.points()?
        .into_par_iter()
        .map(|(t, ga, gb)| {
            let scenario = NoiseScenario::with_locality(spec.kind, spec.locality, ga, gb)?;
            let rho = apply_scenario(&rho0, &scenario)?;
            let d_numeric = gmqd_numeric(&rho).value;
            let d_closed = gmqd_closed_form(&scenario, spec.b, spec.c);
            Ok(SweepRow {
                t,
                gamma_a: scenario.gamma_a(),
                gamma_b: scenario.gamma_b(),
                d_numeric,
                d_closed,
                abs_err: (d_numeric - d_closed).abs(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "index")]
pub enum SuddenDeathCheck {
    /// Discord stays positive at every point short of full-strength noise.
    NoSuddenDeath,
    /// First row index where discord vanished before full-strength noise.
    Violated(usize),
    /// All analytic values are zero (`b = c`), so there is nothing to lose.
    NotApplicable,
}

impl SuddenDeathCheck {
    pub fn holds(self) -> bool {
        !matches!(self, SuddenDeathCheck::Violated(_))
    }
}

pub fn check_no_sudden_death(rows: &[SweepRow]) -> SuddenDeathCheck {
    if rows.iter().all(|r| r.d_closed == 0.0) {
        return SuddenDeathCheck::NotApplicable;
    }
    rows.iter()
        .position(|r| r.gamma_a.max(r.gamma_b) < 1.0 - 1e-9 && r.d_numeric <= ZERO_DISCORD_TOL)
        .map_or(SuddenDeathCheck::NoSuddenDeath, SuddenDeathCheck::Violated)
}
