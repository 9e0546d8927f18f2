//! `sigmax`: command-line front end for the sigma and max calculi.

mod commands;
mod input;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sigmax_core::Direction;

use commands::{Json, Report, SimSource, Sweep};
use input::{parse_grid, parse_tolerance, InputError};

#[derive(Parser, Debug)]
#[command(name = "sigmax", version, about = "Probability (sigma) and possibility (max) calculi on finite sample spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; `fixtures` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Absolute tolerance for real-valued comparisons.
    #[arg(long, global = true, default_value = "1e-9", value_parser = parse_tolerance)]
    tolerance: f64,

    /// Seed for sampling and random sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Grid resolution as COLSxROWS.
    #[arg(long, global = true, default_value = "64x64", value_parser = parse_grid)]
    grid: (u32, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirectionArg {
    /// Condition the column variable on the row variable.
    OutGivenRow,
    /// Condition the row variable on the column variable.
    OutGivenCol,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::OutGivenRow => Direction::OutGivenRow,
            DirectionArg::OutGivenCol => Direction::OutGivenCol,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Die {
    Fair6,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms of a distribution, counts, joint or relation file.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Classify every concept pair of a fixture file.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Event measures of a distribution, frequencies of counts, or
    /// compatibilities of a fixture.
    Measure {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated labels; all events when omitted.
        #[arg(long)]
        event: Option<String>,
    },
    /// Exact union possibility against max and sum for every fixture pair,
    /// or the union report of two events of a probability distribution.
    CompareUnion {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Marginals and conditional of a joint, or a joint rebuilt from a
    /// relation and a prior.
    Infer {
        #[arg(long = "in", conflicts_with_all = ["relation", "prior"], required_unless_present = "relation")]
        input: Option<PathBuf>,
        #[arg(long, requires = "prior")]
        relation: Option<PathBuf>,
        #[arg(long, requires = "relation")]
        prior: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "out-given-row")]
        direction: DirectionArg,
    },
    /// Chain two conditional relations.
    Compose {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
    },
    /// Posterior after observing one outcome.
    Update {
        #[arg(long)]
        prior: PathBuf,
        #[arg(long)]
        likelihood: PathBuf,
        #[arg(long)]
        observed: String,
    },
    /// Draw outcomes and tabulate relative frequencies.
    Simulate {
        #[arg(long, value_enum, conflicts_with = "input", required_unless_present = "input")]
        die: Option<Die>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
    },
    /// Generate a named ellipse fixture.
    Fixtures {
        #[arg(long)]
        name: String,
    },
    /// Run the seeded oracle sweeps; JSON output is one verdict per line.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        sweep: Sweep,
        /// Fixtures per sweep; defaults to 1000 (500 for inference).
        #[arg(long)]
        count: Option<usize>,
    },
}

fn run(cli: &Cli) -> Result<Report, InputError> {
    match &cli.command {
        Command::Check { input } => commands::check(input, cli.tolerance),
        Command::Classify { input } => commands::classify(input),
        Command::Measure { input, event } => commands::measure(input, event.as_deref()),
        Command::CompareUnion { input, a, b } => commands::compare_union(input, a.as_deref(), b.as_deref()),
        Command::Infer { input, relation, prior, direction } => match (input, relation, prior) {
            (Some(joint), _, _) => commands::infer_joint(joint, (*direction).into()),
            (None, Some(rel), Some(prior)) => commands::infer_recombine(rel, prior, (*direction).into()),
            _ => Err(InputError::arg("infer needs --in JOINT or --relation with --prior")),
        },
        Command::Compose { first, second } => commands::compose_files(first, second),
        Command::Update { prior, likelihood, observed } => commands::update(prior, likelihood, observed),
        Command::Simulate { die, input, n } => {
            let source = match (die, input) {
                (_, Some(path)) => SimSource::File(path),
                (Some(Die::Fair6), None) => SimSource::FairDie,
                (None, None) => return Err(InputError::arg("simulate needs --die or --in")),
            };
            commands::simulate(source, *n, cli.seed)
        }
        Command::Fixtures { name } => commands::fixtures(name, cli.grid),
        Command::Verify { sweep, count } => commands::verify(*sweep, *count, cli.seed, cli.grid),
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.text.clone(),
        Format::Json => match &report.json {
            Json::Document(v) => {
                let mut s = serde_json::to_string_pretty(v).expect("value serializes");
                s.push('\n');
                s
            }
            Json::Lines(lines) => lines.iter().map(|v| format!("{v}\n")).collect(),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or(match cli.command {
        Command::Fixtures { .. } => Format::Json,
        _ => Format::Text,
    });
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = render(&report, format);
    let written = match &cli.out {
        Some(path) => fs::write(path, &body).map_err(|e| format!("{}: cannot write: {e}", path.display())),
        None => io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
