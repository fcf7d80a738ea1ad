use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qcorr::channels::ChannelKind;
use qcorr::cli::{
    parse_range, run_crossings, run_figure, run_oracle_check, run_sweep, workers_from_env, Axis, CliError, FigurePreset,
    Format, Output, SweepKnob, SweepSpec,
};
use qcorr::model::ModelParams;

#[derive(Parser)]
#[command(name = "qcorr", version, about = "Thermal discord and concurrence of a three-qubit XXZ ring with DM interaction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    j: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    delta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    dm: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    field: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    temp: f64,
}

impl ModelArgs {
    fn params(&self) -> ModelParams {
        ModelParams::new(self.j, self.delta, self.dm, self.field, self.temp)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate correlations on a 1-D or 2-D parameter grid.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        /// d, delta, b or gamma
        #[arg(long)]
        knob: String,
        /// start:stop:steps
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        /// dephasing or depolarizing
        #[arg(long)]
        channel: Option<String>,
        #[arg(long, requires = "second_range")]
        second_knob: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "second_knob")]
        second_range: Option<String>,
        /// Comma-separated subset of discord,concurrence,classical,mutual,energies
        #[arg(long, default_value = "discord", value_delimiter = ',')]
        outputs: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Regenerate the data behind one published figure.
    Figure {
        preset: String,
        #[arg(long)]
        out_dir: PathBuf,
        /// Comma-separated per-curve values replacing the preset defaults
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        curves: Option<Vec<f64>>,
    },
    /// Locate ground-state level crossings and the discord jump at each one.
    Crossings {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        knob: String,
        /// start:stop (a trailing :steps is accepted and ignored)
        #[arg(long, allow_hyphen_values = true)]
        range: String,
    },
    /// Compare the closed-form discord with brute-force optimization.
    OracleCheck {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn axis(knob: &str, range: &str) -> Result<Axis, CliError> {
    let (start, stop, steps) = parse_range(range)?;
    Ok(Axis::new(knob.parse()?, start, stop, steps))
}

fn crossing_range(s: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Usage(format!("expected <start>:<stop>, got '{s}'"));
    if !(2..=3).contains(&parts.len()) {
        return Err(bad());
    }
    let start = parts[0].trim().parse().map_err(|_| bad())?;
    let stop = parts[1].trim().parse().map_err(|_| bad())?;
    Ok((start, stop))
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Sweep {
            model,
            knob,
            range,
            channel,
            second_knob,
            second_range,
            outputs,
            out,
            format,
        } => {
            let mut spec = SweepSpec::new(model.params(), axis(&knob, &range)?);
            if let (Some(k), Some(r)) = (second_knob, second_range) {
                spec.second = Some(axis(&k, &r)?);
            }
            spec.channel = channel
                .map(|c| c.parse::<ChannelKind>().map_err(CliError::from))
                .transpose()?;
            spec.outputs = outputs
                .iter()
                .map(|o| o.trim().parse::<Output>())
                .collect::<Result<_, _>>()?;
            let format: Format = format.parse()?;
            let table = run_sweep(&spec)?;
            fs::write(&out, table.render(format))?;
        }
        Command::Figure { preset, out_dir, curves } => {
            let preset: FigurePreset = preset.parse()?;
            for path in run_figure(preset, &out_dir, curves.as_deref())? {
                println!("{}", path.display());
            }
        }
        Command::Crossings { model, knob, range } => {
            let knob = match knob.parse::<SweepKnob>()? {
                SweepKnob::Model(k) => k,
                SweepKnob::Gamma => return Err(CliError::Usage("crossings scan d, delta or b".into())),
            };
            let report = run_crossings(&model.params(), knob, crossing_range(&range)?)?;
            print!("{report}");
        }
        Command::OracleCheck { n, seed } => {
            let report = run_oracle_check(n, seed)?;
            print!("{report}");
            return Ok(report.exit_code());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = workers_from_env().and_then(|workers| {
        if let Some(n) = workers {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Numerical(format!("cannot start worker pool: {e}")))?;
        }
        run(cli.command)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("qcorr: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
