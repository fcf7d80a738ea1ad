use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{format_sig9, CliError};
use crate::correlations::{discord_oracle, discord_xstate};
use crate::model::{
    find_crossing, ground_state_mixture, level_mixture, reduced_pair_state, Knob, ModelParams, XState,
};
use crate::numerics::{partial_trace, ComplexMatrix};

/// Largest tolerated |closed form − oracle| discord gap.
pub const ORACLE_GAP_TOL: f64 = 1e-3;

/// One ground-state crossing with the pair discord on either side.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossingEntry {
    pub value: f64,
    pub below: Vec<usize>,
    pub above: Vec<usize>,
    pub discord_below: f64,
    pub discord_at: f64,
    pub discord_above: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossingReport {
    pub params: ModelParams,
    pub knob: Knob,
    pub range: (f64, f64),
    pub entries: Vec<CrossingEntry>,
}

fn pair_discord(rho: &ComplexMatrix) -> Result<f64, CliError> {
    let pair = partial_trace(rho, (1, 2))?;
    let x = XState::from_matrix(&pair)?;
    Ok(discord_xstate(&x)?.discord.max(0.0))
}

/// Crossings of the ground level along `knob`, with the zero-temperature
/// discord of qubits 1 and 2 below, at and above each one.
pub fn run_crossings(params: &ModelParams, knob: Knob, range: (f64, f64)) -> Result<CrossingReport, CliError> {
    let entries = find_crossing(params, knob, range)?
        .into_iter()
        .map(|c| {
            Ok(CrossingEntry {
                discord_below: pair_discord(&level_mixture(&c.below))?,
                discord_at: pair_discord(&ground_state_mixture(&params.with(knob, c.value)))?,
                discord_above: pair_discord(&level_mixture(&c.above))?,
                value: c.value,
                below: c.below,
                above: c.above,
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(CrossingReport {
        params: *params,
        knob,
        range,
        entries,
    })
}

fn level_list(levels: &[usize]) -> String {
    let names: Vec<String> = levels.iter().map(|k| format!("E{k}")).collect();
    format!("{{{}}}", names.join(","))
}

impl fmt::Display for CrossingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "# J={} Delta={} D={} B={} knob={} range={}:{}",
            p.j, p.delta, p.dm, p.field, self.knob, self.range.0, self.range.1
        )?;
        if self.entries.is_empty() {
            return writeln!(f, "no crossing");
        }
        for e in &self.entries {
            writeln!(
                f,
                "{}={} ground {} -> {} discord {} -> {} -> {}",
                self.knob,
                format_sig9(e.value),
                level_list(&e.below),
                level_list(&e.above),
                format_sig9(e.discord_below),
                format_sig9(e.discord_at),
                format_sig9(e.discord_above),
            )?;
        }
        Ok(())
    }
}

/// One randomly drawn thermal state compared against the oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleSample {
    pub index: usize,
    pub params: ModelParams,
    pub closed_form: f64,
    pub oracle: f64,
}

impl OracleSample {
    pub fn gap(&self) -> f64 {
        (self.closed_form - self.oracle).abs()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub n_samples: usize,
    pub seed: u64,
    pub max_gap: f64,
    /// Samples whose gap exceeds `ORACLE_GAP_TOL`, in draw order.
    pub exceeding: Vec<OracleSample>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.exceeding.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            4
        }
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "oracle check: n={} seed={} max_gap={} tolerance={}",
            self.n_samples,
            self.seed,
            format_sig9(self.max_gap),
            ORACLE_GAP_TOL
        )?;
        for s in &self.exceeding {
            let p = &s.params;
            writeln!(
                f,
                "exceeds: sample={} J={} Delta={} D={} B={} T={} closed_form={} oracle={} gap={}",
                s.index,
                p.j,
                p.delta,
                p.dm,
                p.field,
                p.temp,
                format_sig9(s.closed_form),
                format_sig9(s.oracle),
                format_sig9(s.gap())
            )?;
        }
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Seeded parameter draws: `J = ±1`, `Δ, D ∈ [−3, 3]`, `B ∈ [−2, 2]`, `T ∈ [0.2, 3]`.
pub fn draw_oracle_params(n: usize, seed: u64) -> Vec<ModelParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let j = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            ModelParams::new(
                j,
                rng.gen_range(-3.0..=3.0),
                rng.gen_range(-3.0..=3.0),
                rng.gen_range(-2.0..=2.0),
                rng.gen_range(0.2..=3.0),
            )
        })
        .collect()
}

fn compare(index: usize, params: ModelParams) -> Result<OracleSample, CliError> {
    let x = reduced_pair_state(&params)?;
    let closed_form = discord_xstate(&x)?.discord;
    let oracle = discord_oracle(&x.to_matrix())?.discord;
    Ok(OracleSample {
        index,
        params,
        closed_form,
        oracle,
    })
}

/// Cross-checks the closed-form discord against the brute-force optimum on
/// `n_samples` seeded thermal states.
pub fn run_oracle_check(n_samples: usize, seed: u64) -> Result<OracleReport, CliError> {
    if n_samples == 0 {
        return Err(CliError::Usage("oracle check needs at least one sample".into()));
    }
    let samples: Vec<OracleSample> = draw_oracle_params(n_samples, seed)
        .into_par_iter()
        .enumerate()
        .map(|(i, p)| compare(i, p))
        .collect::<Result<_, _>>()?;
    let max_gap = samples.iter().map(OracleSample::gap).fold(0.0, f64::max);
    let exceeding = samples.into_iter().filter(|s| s.gap() > ORACLE_GAP_TOL).collect();
    Ok(OracleReport {
        n_samples,
        seed,
        max_gap,
        exceeding,
    })
}
