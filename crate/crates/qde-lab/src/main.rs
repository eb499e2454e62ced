use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qde_core::field::parse_rat;
use qde_core::params::Mode;
use qde_core::young::{Partition, Polarization};
use qde_core::{Error, Rat};
use qde_lab::commands::{run, Command, RunConfig};
use qde_lab::report::envelope;

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum ModeArg {
    Numeric,
    SymbolicA,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum PolArg {
    Std,
    Opp,
}

/// Exact verification of stable envelopes, vertex functions and exotic q-difference
/// equations for the Hilbert scheme of points in the plane.
#[derive(Debug, Parser)]
#[command(name = "qde-lab", version)]
struct Cli {
    command: Command,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Slope as `p/q`; must not lie on a wall.
    #[arg(long, default_value = "-1/100", value_parser = slope_arg, allow_hyphen_values = true)]
    slope: Rat,
    /// Partition as comma-separated parts, e.g. `4,3,1`.
    #[arg(long, value_parser = partition_arg)]
    lambda: Option<Partition>,
    #[arg(long, value_parser = partition_arg)]
    mu: Option<Partition>,
    #[arg(long, default_value_t = 2)]
    order: usize,
    #[arg(long, value_enum, default_value = "numeric")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "std")]
    pol: PolArg,
    #[arg(long, env = "QDELAB_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    draws: usize,
    /// Treat conjecture-level checks as assertions.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn slope_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn partition_arg(s: &str) -> Result<Partition, String> {
    Partition::parse(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        n: cli.n,
        slope: cli.slope,
        lambda: cli.lambda,
        mu: cli.mu,
        order: cli.order,
        mode: match cli.mode {
            ModeArg::Numeric => Mode::Numeric,
            ModeArg::SymbolicA => Mode::SymbolicA,
        },
        pol: match cli.pol {
            PolArg::Std => Polarization::Std,
            PolArg::Opp => Polarization::Opp,
        },
        seed: cli.seed,
        draws: cli.draws,
        strict: cli.strict,
    };
    if let Err(e) = cfg.validate() {
        eprintln!("qde-lab: {e}");
        return ExitCode::from(2);
    }
    let outcome = match run(cli.command, &cfg) {
        Ok(o) => o,
        Err(e @ (Error::Invalid(_) | Error::Parse(_) | Error::SlopeOnWall(_))) => {
            eprintln!("qde-lab: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("qde-lab: {e}");
            return ExitCode::from(3);
        }
    };
    let doc = envelope(
        cli.command.name(),
        &outcome.params,
        outcome.ok,
        outcome.body,
    );
    let text = serde_json::to_string_pretty(&doc).expect("JSON encoding") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("qde-lab: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
