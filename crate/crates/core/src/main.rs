use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gns_entropy::scenario::{self, RunOptions, ScenarioSpec};
use gns_entropy::{Error, LogBase, Method};

#[derive(Parser)]
#[command(
    name = "gns-entropy",
    version,
    about = "Entropy of states restricted to operator subalgebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Computation route; overrides the scenario file.
    #[arg(long, global = true, value_enum)]
    method: Option<MethodArg>,
    /// Seed for random central elements.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Relative rank cut for null spaces.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Logarithm base for the reported `entropy` field.
    #[arg(long, global = true, value_enum, default_value = "e")]
    log_base: LogBaseArg,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Gns,
    Wedderburn,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum LogBaseArg {
    E,
    #[value(name = "2")]
    Two,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario file and print a JSON report.
    Run { file: PathBuf },
    /// Vary a preset parameter and print CSV.
    Sweep {
        file: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Two-boson entropy over the stereographic plane, as CSV.
    Grid {
        #[arg(long)]
        resolution: usize,
        /// Half-width of the square `[-extent, extent]²`.
        #[arg(long, default_value_t = 2.0)]
        extent: f64,
    },
    /// Run a worked example against its golden values.
    Example {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        n: u8,
    },
}

const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_GOLDEN: u8 = 4;

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<u8, Error> {
    let c = &cli.common;
    let opts = RunOptions {
        method: c.method.map(|m| match m {
            MethodArg::Gns => Method::Gns,
            MethodArg::Wedderburn => Method::Wedderburn,
            MethodArg::Both => Method::Both,
        }),
        seed: c.seed,
        rank_tol: c.tol,
        log_base: match c.log_base {
            LogBaseArg::E => LogBase::Natural,
            LogBaseArg::Two => LogBase::Two,
        },
    };
    let out = c.out.as_deref();
    match &cli.command {
        Command::Run { file } => {
            let report = scenario::run(&ScenarioSpec::load(file)?, &opts)?;
            emit(out, &(report.to_json() + "\n"))?;
        }
        Command::Sweep {
            file,
            param,
            from,
            to,
            steps,
        } => {
            let rows =
                scenario::sweep(&ScenarioSpec::load(file)?, &opts, param, *from, *to, *steps)?;
            emit(out, &scenario::sweep_csv(param, &rows))?;
        }
        Command::Grid { resolution, extent } => {
            let rows = scenario::grid(*resolution, *extent, &opts)?;
            emit(out, &scenario::grid_csv(&rows))?;
        }
        Command::Example { n } => {
            let outcome = scenario::example(*n, &opts)?;
            let mut text = String::new();
            for check in &outcome.checks {
                text.push_str(&format!("{check}\n"));
            }
            emit(out, &text)?;
            if !outcome.passed() {
                return Ok(EXIT_GOLDEN);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() {
                EXIT_VALIDATION
            } else {
                EXIT_NUMERICAL
            })
        }
    }
}
