//! Batch front end: parameter sweeps, figure presets and validation reports.
//!
//! Every grid point is evaluated independently on a rayon pool and the rows
//! are gathered back in grid order, so output does not depend on the number
//! of workers.

mod figures;
mod format;
mod reports;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::channels::{dephased_concurrence, dephased_discord, evolved_pair_state, ChannelKind};
use crate::correlations::{concurrence_xstate, discord_xstate};
use crate::error::Error;
use crate::model::{analytic_energies, reduced_pair_state, Knob, ModelParams};

pub use figures::{figure_specs, run_figure, FigurePreset, FigureSpec};
pub use format::{format_sig9, to_csv, to_json};
pub use reports::{
    draw_oracle_params, run_crossings, run_oracle_check, CrossingEntry, CrossingReport, OracleReport,
    OracleSample, ORACLE_GAP_TOL,
};

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "QCORR_WORKERS";

/// Failure classes of the command-line front end, each with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("validation failure: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Validation(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::NonPositiveTemperature(_)
            | Error::GammaOutOfRange(_)
            | Error::NonzeroField(_)
            | Error::InvalidSites(_) => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

/// Anything a sweep can scan: a Hamiltonian knob or the channel strength.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepKnob {
    Model(Knob),
    Gamma,
}

impl SweepKnob {
    pub fn name(self) -> &'static str {
        match self {
            SweepKnob::Model(k) => k.name(),
            SweepKnob::Gamma => "gamma",
        }
    }

    fn cli_name(self) -> &'static str {
        match self {
            SweepKnob::Model(Knob::Dm) => "d",
            SweepKnob::Model(Knob::Delta) => "delta",
            SweepKnob::Model(Knob::Field) => "b",
            SweepKnob::Gamma => "gamma",
        }
    }
}

impl FromStr for SweepKnob {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s.eq_ignore_ascii_case("gamma") {
            return Ok(SweepKnob::Gamma);
        }
        s.parse::<Knob>().map(SweepKnob::Model).map_err(CliError::from)
    }
}

/// A requested output column group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Output {
    Discord,
    Concurrence,
    Classical,
    Mutual,
    Energies,
}

impl Output {
    fn columns(self) -> Vec<String> {
        match self {
            Output::Discord => vec!["discord".into()],
            Output::Concurrence => vec!["concurrence".into()],
            Output::Classical => vec!["classical".into()],
            Output::Mutual => vec!["mutual".into()],
            Output::Energies => (0..8).map(|k| format!("E{k}")).collect(),
        }
    }
}

impl FromStr for Output {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "discord" => Ok(Output::Discord),
            "concurrence" => Ok(Output::Concurrence),
            "classical" => Ok(Output::Classical),
            "mutual" => Ok(Output::Mutual),
            "energies" => Ok(Output::Energies),
            other => Err(CliError::Usage(format!("unknown output '{other}'"))),
        }
    }
}

/// Uniform inclusive grid along one knob.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub knob: SweepKnob,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(knob: SweepKnob, start: f64, stop: f64, steps: usize) -> Self {
        Self {
            knob,
            start,
            stop,
            steps,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * k as f64 / last
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(CliError::Usage(format!(
                "range for {} needs finite start < stop, got {}:{}",
                self.knob.name(),
                self.start,
                self.stop
            )));
        }
        if self.steps < 2 {
            return Err(CliError::Usage(format!(
                "range for {} needs at least 2 steps, got {}",
                self.knob.name(),
                self.steps
            )));
        }
        if self.knob == SweepKnob::Gamma && (self.start < 0.0 || self.stop > 1.0) {
            return Err(CliError::Usage(format!(
                "gamma range must lie inside [0, 1], got {}:{}",
                self.start, self.stop
            )));
        }
        Ok(())
    }
}

/// Parses `start:stop:steps`.
pub fn parse_range(s: &str) -> Result<(f64, f64, usize), CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Usage(format!("expected <start>:<stop>:<steps>, got '{s}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start = parts[0].trim().parse().map_err(|_| bad())?;
    let stop = parts[1].trim().parse().map_err(|_| bad())?;
    let steps = parts[2].trim().parse().map_err(|_| bad())?;
    Ok((start, stop, steps))
}

/// Full description of one sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub fixed: ModelParams,
    pub axis: Axis,
    /// Inner axis of a surface sweep.
    pub second: Option<Axis>,
    pub channel: Option<ChannelKind>,
    pub outputs: Vec<Output>,
    /// Free-form remarks copied into the header comment.
    pub notes: Vec<String>,
}

impl SweepSpec {
    pub fn new(fixed: ModelParams, axis: Axis) -> Self {
        Self {
            fixed,
            axis,
            second: None,
            channel: None,
            outputs: vec![Output::Discord],
            notes: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.axis.validate()?;
        if let Some(second) = &self.second {
            second.validate()?;
            if second.knob == self.axis.knob {
                return Err(CliError::Usage("both sweep axes use the same knob".into()));
            }
        }
        let uses_gamma = self.axis.knob == SweepKnob::Gamma
            || self.second.is_some_and(|a| a.knob == SweepKnob::Gamma);
        match (uses_gamma, self.channel) {
            (true, None) => return Err(CliError::Usage("a gamma sweep needs --channel".into())),
            (false, Some(_)) => {
                return Err(CliError::Usage("--channel only applies to gamma sweeps".into()))
            }
            _ => {}
        }
        if self.fixed.temp.is_nan() || self.fixed.temp <= 0.0 {
            return Err(CliError::Usage(format!(
                "temperature must be positive, got {}",
                self.fixed.temp
            )));
        }
        if self.outputs.is_empty() {
            return Err(CliError::Usage("no outputs requested".into()));
        }
        Ok(())
    }

    fn knob_columns(&self) -> Vec<String> {
        let mut cols = vec![self.axis.knob.name().to_string()];
        if let Some(s) = &self.second {
            cols.push(s.knob.name().to_string());
        }
        cols
    }

    fn output_columns(&self) -> Vec<String> {
        self.outputs.iter().flat_map(|o| o.columns()).collect()
    }

    /// The `# params: ...` comment line (without the leading `# `).
    pub fn header(&self) -> String {
        let p = &self.fixed;
        let mut parts = vec![
            format!("J={}", p.j),
            format!("Delta={}", p.delta),
            format!("D={}", p.dm),
            format!("B={}", p.field),
            format!("T={}", p.temp),
        ];
        let axis_desc = |a: &Axis| format!("{}:{}:{}", a.start, a.stop, a.steps);
        parts.push(format!("knob={}", self.axis.knob.cli_name()));
        parts.push(format!("range={}", axis_desc(&self.axis)));
        if let Some(s) = &self.second {
            parts.push(format!("second_knob={}", s.knob.cli_name()));
            parts.push(format!("second_range={}", axis_desc(s)));
        }
        if let Some(ch) = self.channel {
            parts.push(format!("channel={ch}"));
        }
        for note in &self.notes {
            parts.push(format!("note=\"{note}\""));
        }
        format!("params: {}", parts.join(" "))
    }

    fn points(&self) -> Vec<Vec<f64>> {
        let outer = self.axis.values();
        match &self.second {
            None => outer.into_iter().map(|a| vec![a]).collect(),
            Some(second) => {
                let inner = second.values();
                outer
                    .iter()
                    .flat_map(|&a| inner.iter().map(move |&b| vec![a, b]))
                    .collect()
            }
        }
    }
}

/// One emitted row: knob values followed by the requested outputs.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub knobs: Vec<f64>,
    pub values: Vec<f64>,
}

/// Result of a sweep, ready for emission.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub header: String,
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
}

struct PointValues {
    discord: f64,
    concurrence: f64,
    classical: f64,
    mutual: f64,
}

fn evaluate_correlations(p: &ModelParams, gamma: Option<f64>, channel: Option<ChannelKind>) -> crate::Result<PointValues> {
    let (x, closed_form) = match (channel, gamma) {
        (Some(ChannelKind::Dephasing), Some(g)) if p.field == 0.0 => {
            let d = dephased_discord(p, g)?;
            let c = dephased_concurrence(p, g)?;
            (crate::channels::dephased_pair_state(p, g)?, Some((d, c)))
        }
        (Some(kind), Some(g)) => (evolved_pair_state(p, &kind.build(g)?)?, None),
        _ => (reduced_pair_state(p)?, None),
    };
    let breakdown = discord_xstate(&x)?;
    let (discord, concurrence) = match closed_form {
        Some(dc) => dc,
        None => (breakdown.discord, concurrence_xstate(&x)?),
    };
    Ok(PointValues {
        discord,
        concurrence,
        classical: breakdown.mutual_information - discord,
        mutual: breakdown.mutual_information,
    })
}

/// Rounding residue around zero (below `1e-12`, or negative down to
/// `−1e-10`) is snapped to zero; anything else is kept.
fn snap_nonnegative(x: f64) -> f64 {
    if (-1e-10..1e-12).contains(&x) {
        0.0
    } else {
        x
    }
}

fn evaluate_point(spec: &SweepSpec, knobs: &[f64]) -> Result<Vec<f64>, CliError> {
    let mut p = spec.fixed;
    let mut gamma = None;
    let axes = std::iter::once(&spec.axis).chain(spec.second.as_ref());
    for (axis, &value) in axes.zip(knobs) {
        match axis.knob {
            SweepKnob::Model(k) => p = p.with(k, value),
            SweepKnob::Gamma => gamma = Some(value),
        }
    }
    let needs_correlations = spec.outputs.iter().any(|o| *o != Output::Energies);
    let corr = if needs_correlations {
        Some(evaluate_correlations(&p, gamma, spec.channel).map_err(|e| {
            CliError::Numerical(format!("at {knobs:?}: {e}"))
        })?)
    } else {
        None
    };
    let mut row = Vec::new();
    for out in &spec.outputs {
        match (out, &corr) {
            (Output::Energies, _) => row.extend(analytic_energies(&p)),
            (Output::Discord, Some(c)) => row.push(snap_nonnegative(c.discord)),
            (Output::Concurrence, Some(c)) => row.push(c.concurrence),
            (Output::Classical, Some(c)) => row.push(snap_nonnegative(c.classical)),
            (Output::Mutual, Some(c)) => row.push(snap_nonnegative(c.mutual)),
            (_, None) => unreachable!("correlations are computed whenever requested"),
        }
    }
    if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
        return Err(CliError::Numerical(format!("non-finite value {bad} at {knobs:?}")));
    }
    Ok(row)
}

/// Evaluates the sweep on the current rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable, CliError> {
    spec.validate()?;
    let points = spec.points();
    let rows: Vec<SweepRow> = points
        .par_iter()
        .map(|knobs| {
            evaluate_point(spec, knobs).map(|values| SweepRow {
                knobs: knobs.clone(),
                values,
            })
        })
        .collect::<Result<_, _>>()?;
    let mut columns = spec.knob_columns();
    columns.extend(spec.output_columns());
    Ok(SweepTable {
        header: spec.header(),
        columns,
        rows,
    })
}

/// Evaluates the sweep on a dedicated pool of `workers` threads.
pub fn run_sweep_with_workers(spec: &SweepSpec, workers: usize) -> Result<SweepTable, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Numerical(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_sweep(spec))
}

/// Worker count from `QCORR_WORKERS`, if set to a positive integer.
pub fn workers_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{WORKERS_ENV} must be a positive integer, got '{v}'"))),
        },
        Err(_) => Ok(None),
    }
}

/// Output file flavour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Usage(format!("unknown format '{other}'"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl SweepTable {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => to_csv(self),
            Format::Json => to_json(self),
        }
    }

    /// Column index by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of one column, in row order.
    pub fn column_values(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.column(name)?;
        Some(
            self.rows
                .iter()
                .map(|r| {
                    if idx < r.knobs.len() {
                        r.knobs[idx]
                    } else {
                        r.values[idx - r.knobs.len()]
                    }
                })
                .collect(),
        )
    }
}
