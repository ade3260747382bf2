//! Single executable exposing every library module as a subcommand with JSON
//! input and output. Exit codes: 0 success, 1 failed verification, 2 violated
//! precondition, 3 malformed input, 4 numerical failure.

mod cmd_arrangement;
mod cmd_contract;
mod cmd_hypertoric;
mod cmd_mt;
mod cmd_nahm;
mod cmd_quiver;
mod cmd_rootsys;
mod cmd_verify;
mod manual;
mod util;
mod wire;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_SCHEMA: u8 = 3;
pub const EXIT_NUMERICAL: u8 = 4;

/// Error carrying its exit class.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn schema(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_SCHEMA,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }
}

impl From<symkit::Error> for CliError {
    fn from(e: symkit::Error) -> CliError {
        let code = if e.is_numerical() {
            EXIT_NUMERICAL
        } else {
            EXIT_PRECONDITION
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::schema(format!("invalid JSON: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::schema(format!("io error: {e}"))
    }
}

#[derive(Parser)]
#[command(
    name = "symkit",
    about = "Implosion and contraction computations at desk scale",
    version
)]
struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Root systems and Weyl groups.
    Rootsys(cmd_rootsys::RootsysCmd),
    /// Hyperplane arrangements: flats, broad subsets, strata.
    Arrangement(cmd_arrangement::ArrangementCmd),
    /// Hypertoric points and their moment data.
    Hypertoric(cmd_hypertoric::HypertoricCmd),
    /// Full-flag quiver moment maps and solver.
    Quiver(cmd_quiver::QuiverCmd),
    /// Contraction maps, flows, and invariants.
    Contract(cmd_contract::ContractCmd),
    /// Composition arithmetic for morphisms between groups.
    Mt(cmd_mt::MtCmd),
    /// Nahm system integration and symmetries.
    Nahm(cmd_nahm::NahmCmd),
    /// Run a named property suite.
    Verify(cmd_verify::VerifyCmd),
    /// Print the manual generated from the shipped schemas.
    Man,
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn emit(value: &serde_json::Value, output: Option<&PathBuf>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(CliError::from)?;
    match output {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Machine-readable error document on stderr.
fn report_error(e: &CliError) {
    let doc = serde_json::json!({ "error": { "code": e.code, "message": e.message } });
    eprintln!("{doc}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<serde_json::Value, CliError> = match cli.command {
        Command::Rootsys(cmd) => cmd.run(),
        Command::Arrangement(cmd) => cmd.run(),
        Command::Hypertoric(cmd) => cmd.run(),
        Command::Quiver(cmd) => cmd.run(),
        Command::Contract(cmd) => cmd.run(),
        Command::Mt(cmd) => cmd.run(),
        Command::Nahm(cmd) => cmd.run(),
        Command::Verify(cmd) => {
            return match cmd.run() {
                Ok((value, all_pass)) => {
                    if emit(&value, cli.output.as_ref()).is_err() {
                        return ExitCode::from(EXIT_SCHEMA);
                    }
                    if all_pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_VERIFY_FAILED)
                    }
                }
                Err(e) => {
                    report_error(&e);
                    ExitCode::from(e.code)
                }
            };
        }
        Command::Man => {
            println!("{}", manual::render());
            return ExitCode::SUCCESS;
        }
    };
    match result {
        Ok(value) => match emit(&value, cli.output.as_ref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                report_error(&e);
                ExitCode::from(e.code)
            }
        },
        Err(e) => {
            report_error(&e);
            ExitCode::from(e.code)
        }
    }
}
