//! `hyperwall`: batch front end for the exact wall, stability, intersection,
//! replacement and mixed-subdivision computations.
//!
//! Every subcommand prints one JSON document. Exit status is 0 on success, 1
//! when `verify-paper` finds a mismatch, and 2 on any input error.

mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hyperwall", version, about)]
struct Cli {
    /// Concrete rational value for ε in (0, 1); symbolic infinitesimal ε when omitted.
    #[arg(long, global = true)]
    eps: Option<String>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Walls through a weight vector.
    Walls {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// `t`, `nt`, `a`, `w_hat`, `h`, or a weight-vector JSON file.
        #[arg(long, default_value = "t")]
        weights: String,
    },
    /// Walls crossed by the open segment between two weight vectors.
    Segment {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "t")]
        from: String,
        #[arg(long, default_value = "nt")]
        to: String,
    },
    /// Chamber predicates for a pair of weight vectors.
    Chamber {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Log canonicity and stability of a weighted arrangement.
    Stability {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "t")]
        weights: String,
        /// `e_config` or an arrangement JSON file.
        arrangement: String,
    },
    /// Intersection numbers and ampleness.
    Ample {
        #[arg(long, value_enum, default_value_t = Model::Blowup)]
        model: Model,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Pairing-surface JSON file (for `--model pairing`).
        surface: Option<PathBuf>,
    },
    /// Limit sections and the degeneration model of a jet family.
    Replace {
        family: PathBuf,
        /// Number of hyperplanes; defaults to d + 1 + number of members.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Regular mixed subdivision of m·Δ_d.
    Mixedsub {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        /// JSON array of lifting values.
        #[arg(long, conflicts_with = "random")]
        lifting: Option<PathBuf>,
        /// Seed for a random integer lifting (default 0).
        #[arg(long)]
        random: Option<u64>,
    },
    /// Replay the closed-form values the computations are expected to reproduce.
    VerifyPaper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Blowup,
    Pairing,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok)) => {
            if let Err(e) = emit(&cli, &report) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, report: &serde_json::Value) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    match &cli.output {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// The report and whether the run counts as a positive outcome.
fn run(cli: &Cli) -> anyhow::Result<(serde_json::Value, bool)> {
    let eps = commands::parse_eps(cli.eps.as_deref())?;
    let report = match &cli.command {
        Command::Walls { d, n, weights } => commands::walls(*d, *n, weights, &eps)?,
        Command::Segment { d, n, from, to } => commands::segment(*d, *n, from, to, &eps)?,
        Command::Chamber { d, n, a, b } => commands::chamber(*d, *n, a, b, &eps)?,
        Command::Stability {
            d,
            n,
            weights,
            arrangement,
        } => commands::stability(*d, *n, weights, arrangement, &eps)?,
        Command::Ample { model, d, n, surface } => match model {
            Model::Blowup => commands::ample_blowup(*d, *n, &eps)?,
            Model::Pairing => commands::ample_pairing(surface.as_deref())?,
        },
        Command::Replace { family, n } => commands::replace(family, *n, &eps)?,
        Command::Mixedsub { d, m, lifting, random } => {
            commands::mixedsub(*d, *m, lifting.as_deref(), *random)?
        }
        Command::VerifyPaper => {
            let report = verify::run(&eps);
            let ok = report.failed == 0;
            return Ok((serde_json::to_value(report)?, ok));
        }
    };
    Ok((report, true))
}
