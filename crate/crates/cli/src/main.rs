mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qtele_core::optimal::PropertyKind;
use qtele_core::Error;

/// Two-qubit states as teleportation resources.
#[derive(Parser)]
#[command(name = "qtele", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form, fidelity, deviation and entanglement properties of a state.
    Analyze {
        state_file: PathBuf,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Write the optimal state for a fixed property value.
    Construct {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_parser = parse_value, allow_hyphen_values = true)]
        value: f64,
        /// Local vector r (concurrence family only); s = −r.
        #[arg(long, value_parser = parse_r, allow_hyphen_values = true)]
        r: Option<[f64; 3]>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check whether a state is optimal for the given property value.
    Verify {
        state_file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_parser = parse_value, allow_hyphen_values = true)]
        value: f64,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Tabulate the largest maximal fidelity over a range of property values.
    Sweep {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_parser = parse_value, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, value_parser = parse_value, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare closed-form F and Δ with the simulated protocol.
    Oracle {
        state_file: PathBuf,
        /// Also run a Monte-Carlo estimate with this many inputs.
        #[arg(long)]
        mc: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        format: FormatArgs,
    },
}

#[derive(Args, Clone, Copy)]
struct FormatArgs {
    /// JSON output (default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Plain `key: value` lines.
    #[arg(long)]
    text: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(name = "L", alias = "linear_entropy", alias = "l")]
    L,
    #[value(name = "B", alias = "chsh_b", alias = "b")]
    B,
    #[value(name = "C", alias = "concurrence", alias = "c")]
    C,
}

impl From<KindArg> for PropertyKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::L => PropertyKind::LinearEntropy,
            KindArg::B => PropertyKind::ChshB,
            KindArg::C => PropertyKind::Concurrence,
        }
    }
}

/// A number, or `2√2` / `2sqrt2` for the CHSH maximum.
fn parse_value(s: &str) -> Result<f64, String> {
    qtele_core::qstate::parse_scalar(s).map_err(|e| e.to_string())
}

fn parse_r(s: &str) -> Result<[f64; 3], String> {
    qtele_core::qstate::parse_vector3(s).map_err(|e| e.to_string())
}

pub mod exit {
    pub const OK: u8 = 0;
    pub const NOT_OPTIMAL: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const INVALID_STATE: u8 = 3;
    pub const RANGE: u8 = 4;
    pub const MISMATCH: u8 = 5;
}

/// Failure of a subcommand, carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => exit::PARSE,
            Error::NonHermitian { .. }
            | Error::TraceNotOne { .. }
            | Error::NotPositive { .. }
            | Error::NonFinite => exit::INVALID_STATE,
            Error::OutOfRange { .. } => exit::RANGE,
            Error::MismatchedProperty { .. } => exit::MISMATCH,
            Error::NotEntangled { .. } | Error::PreconditionFailed(_) | Error::DesignTooWeak { .. } => {
                exit::NOT_OPTIMAL
            }
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { state_file, format } => commands::analyze(&state_file, format.text),
        Command::Construct { kind, value, r, out } => commands::construct(kind.into(), value, r, &out),
        Command::Verify {
            state_file,
            kind,
            value,
            format,
        } => commands::verify(&state_file, kind.into(), value, format.text),
        Command::Sweep {
            kind,
            from,
            to,
            steps,
            out,
        } => commands::sweep(kind.into(), from, to, steps, out.as_deref()),
        Command::Oracle {
            state_file,
            mc,
            seed,
            format,
        } => commands::oracle(&state_file, mc, seed, format.text),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
