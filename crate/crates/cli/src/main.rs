//! `termbase`: validate, convert, project and count terminology stores.
//!
//! Exit status: 0 success, 1 violations found (or `--force` was needed),
//! 2 usage, I/O or parse error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use termbase_core::termmodel::Approach;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Violations = 1,
    Error = 2,
}

impl From<ExitStatus> for ExitCode {
    fn from(s: ExitStatus) -> ExitCode {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug, Parser)]
#[command(name = "termbase", version, about = "Unified terminology store tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InFormat {
    Tbx,
    Store,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Tbx,
    Store,
    Ntriples,
    Ddl,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check cardinalities and termbase rules of a store file
    Validate { store: PathBuf },
    /// Convert between store, TBX, N-Triples and SQL DDL
    Convert {
        input: PathBuf,
        /// Output file, `-` for standard output
        output: PathBuf,
        #[arg(long, value_enum)]
        in_format: InFormat,
        #[arg(long, value_enum)]
        out_format: OutFormat,
        /// Base IRI for N-Triples output
        #[arg(long)]
        base: Option<String>,
        /// Document title for TBX output
        #[arg(long, default_value = "")]
        title: String,
        /// Export TBX despite conditional violations
        #[arg(long)]
        force: bool,
    },
    /// Write one approach's projection of a store to standard output
    View {
        store: PathBuf,
        #[arg(long, value_parser = parse_approach)]
        approach: Approach,
    },
    /// Count entities and links per type and association
    Stats { store: PathBuf },
}

fn parse_approach(s: &str) -> Result<Approach, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::Error.into()
            } else {
                ExitStatus::Success.into()
            };
        }
    };

    let result = match cli.command {
        Command::Validate { store } => commands::validate(&store),
        Command::Convert {
            input,
            output,
            in_format,
            out_format,
            base,
            title,
            force,
        } => commands::convert(&commands::ConvertArgs {
            input,
            output,
            in_format,
            out_format,
            base,
            title,
            force,
        }),
        Command::View { store, approach } => commands::view(&store, approach),
        Command::Stats { store } => commands::stats(&store),
    };

    match result {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitStatus::Error.into()
        }
    }
}
