mod enumerate;
mod tables;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use elemsub::elementary::DEFAULT_BUDGET;
use elemsub::field::FiniteField;
use elemsub::rootsys::RootSystem;
use elemsub::Error;

#[derive(Parser)]
#[command(name = "elemsub", version, about = "Maximal elementary subalgebras and their tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit one of the tables, optionally checking it against the embedded copy.
    Tables {
        #[arg(long, value_enum)]
        which: tables::Which,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Diff against the embedded table; exit 1 on mismatch.
        #[arg(long)]
        golden: bool,
        /// Diff against this CSV file instead of the embedded table.
        #[arg(long, requires = "golden")]
        against: Option<PathBuf>,
        /// Only this type's rows.
        #[arg(long = "type")]
        type_label: Option<String>,
    },
    /// Check the computed claims for one type and prime.
    Verify {
        #[arg(long, value_enum)]
        stage: verify::Stage,
        #[command(flatten)]
        target: Target,
        /// Dimension of the subalgebras; defaults to the largest commuting set size.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate E(u) in one dimension and print one JSON line per G(F_q)-orbit.
    Enumerate {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        dim: usize,
    },
    /// Rewrite the embedded golden tables.
    Golden {
        #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/golden"))]
        dir: PathBuf,
    },
}

#[derive(clap::Args)]
struct Target {
    #[arg(long = "type")]
    type_label: String,
    #[arg(long)]
    p: u32,
    /// Field degree: q = p^r.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Largest number of candidates or search nodes.
    #[arg(long, env = "ELEMSUB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

impl Target {
    fn resolve(&self) -> Result<(RootSystem, FiniteField), Error> {
        Ok((RootSystem::parse(&self.type_label)?, FiniteField::new(self.p, self.r)?))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

/// Exit status: 0 pass, 1 mathematical mismatch, 2 invalid input, 3 budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Pass = 0,
    Budget = 3,
    Mismatch = 1,
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::InvalidType(_)
        | Error::InvalidRoot(_)
        | Error::InvalidField(_)
        | Error::BadPrime(_)
        | Error::Unsupported(_)
        | Error::NotCommuting(_) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<Status, Error> {
    match cli.command {
        Command::Tables { which, format, golden, against, type_label } => {
            tables::run(which, format, golden.then_some(against), type_label)
        }
        Command::Verify { stage, target, dim, format } => verify::run(stage, &target, dim, format),
        Command::Enumerate { target, dim } => enumerate::run(&target, dim),
        Command::Golden { dir } => tables::regenerate(&dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(s) => ExitCode::from(s as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
