//! `gfsurgery` command-line tool.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Input errors; these exit with status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Parser, Debug)]
#[command(name = "gfsurgery", version, about = "Gauge-fixed surgery ancilla systems: build, verify, simulate, decode")]
struct Cli {
    /// Worker threads; outputs do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a merged code, print its summary and optionally save the bundle.
    Build(commands::BuildArgs),
    /// Fault distances from the group formulas, exhaustively, or by random search.
    Distance(commands::DistanceArgs),
    /// Boundary expansion of an operator's induced graph and the layer count it implies.
    Cheeger(commands::CheegerArgs),
    /// Per-round measurement and logical error rates with Wilson intervals.
    Simulate(commands::SimulateArgs),
    /// Per-shot decoder timing and outcomes.
    DecodeBench(commands::BenchArgs),
    /// Detector samples as CSV.
    Sample(commands::SampleArgs),
    /// Plain-text listing of the measurement schedule.
    Circuit(commands::CircuitArgs),
    /// Native operations of the gross code and the closure tables.
    Synth(commands::SynthArgs),
    /// Summary, expansion and fault distances as one JSON document.
    Report(commands::ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Kind {
    X,
    Z,
    /// Joint measurement of two same-type operators (`--op`, `--op2`).
    Xx,
    /// `--op` is the X part, `--op2` the Z part.
    Y,
}

/// Which merged code to work on.
#[derive(Args, Clone, Debug, Serialize)]
pub struct Target {
    /// `gross`, `hgp:repN`, `hgp:circN` or `file:<stem>`.
    #[arg(long, default_value = "hgp:rep3")]
    code: String,
    /// Operator id: `x<i>`, `z<i>`, or `Xbar`, `Zbar`, `Xbar'`, `Zbar'` on the gross code.
    #[arg(long, default_value = "x0")]
    op: String,
    #[arg(long)]
    op2: Option<String>,
    #[arg(long, value_enum, default_value_t = Kind::X)]
    kind: Kind,
    /// Odd layer count; by default the smallest one the expansion allows.
    #[arg(long)]
    layers: Option<usize>,
    #[arg(long)]
    no_gauge_fix: bool,
    /// Drop gauge checks generated by the others.
    #[arg(long)]
    prune: bool,
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    match cli.command {
        Command::Build(a) => commands::build(&a),
        Command::Distance(a) => commands::distance(&a),
        Command::Cheeger(a) => commands::cheeger(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::DecodeBench(a) => commands::decode_bench(&a),
        Command::Sample(a) => commands::sample(&a),
        Command::Circuit(a) => commands::circuit(&a),
        Command::Synth(a) => commands::synth(&a),
        Command::Report(a) => commands::report(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
