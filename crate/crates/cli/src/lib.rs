//! Command-line front end for building, solving and verifying triplication
//! tables. The binary is a thin wrapper over [`run`].

pub mod batch;
mod commands;
pub mod spec;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use triplication::ScenarioKind;

pub use commands::StarterFile;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const UNSAT: u8 = 2;
    pub const ABORTED: u8 = 3;
    pub const INVALID: u8 = 4;
    pub const INTERNAL: u8 = 5;
}

#[derive(Debug, Parser)]
#[command(name = "triplication", version, about = "Strong starters of order 3m by triplication")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a table from a base, solve it and write the recovered starter.
    Triplicate(TriplicateArgs),
    /// List the admissible keys of a base.
    Keys(KeysArgs),
    /// Check a starter file or a table file.
    Verify(VerifyArgs),
    /// Solve a table given as JSON.
    Solve(SolveArgs),
    /// Sample a random triplication table.
    RandomTt(RandomTtArgs),
    /// Enumerate strong starters of a small order.
    Enumerate(EnumerateArgs),
    /// Sample and solve many random tables in parallel.
    Batch(batch::BatchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    Mod,
    Carry,
}

impl From<ScenarioArg> for ScenarioKind {
    fn from(s: ScenarioArg) -> Self {
        match s {
            ScenarioArg::Mod => ScenarioKind::Mod,
            ScenarioArg::Carry => ScenarioKind::Carry,
        }
    }
}

/// Base description, from a spec file or from flags.
#[derive(Debug, Args)]
pub struct BaseArgs {
    /// JSON spec file; flags below override its fields.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<spec::Mode>,
    #[arg(long)]
    pub m: Option<u32>,
    /// Pairing literal such as "2,3;4,6;1,5".
    #[arg(long = "T0")]
    pub t0: Option<String>,
    #[arg(long = "T1")]
    pub t1: Option<String>,
    #[arg(long = "T2")]
    pub t2: Option<String>,
    #[arg(long)]
    pub mu: Option<u32>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Node budget for the search; unlimited when omitted.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Shuffle value order with this seed instead of trying values in order.
    #[arg(long)]
    pub shuffle: Option<u64>,
}

#[derive(Debug, Args)]
pub struct TriplicateArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    /// Key; every admissible key is tried when omitted.
    #[arg(long)]
    pub key: Option<u32>,
    #[arg(long, value_enum, default_value = "mod")]
    pub scenario: ScenarioArg,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Output directory.
    #[arg(long, env = "TRIPLICATION_OUT", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct KeysArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    /// Print the machine-readable report.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Strong,
    Starter,
    Pseudostarter,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Class a starter file must reach.
    #[arg(long, value_enum, default_value = "strong")]
    pub expect: Expect,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Table JSON file.
    #[arg(long)]
    pub table: PathBuf,
    #[arg(long, value_enum, default_value = "mod")]
    pub scenario: ScenarioArg,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Enumerate every solution instead of stopping at the first.
    #[arg(long)]
    pub all: bool,
    /// Cap on enumerated solutions.
    #[arg(long, default_value_t = 100_000)]
    pub max: usize,
    #[arg(long, env = "TRIPLICATION_OUT", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RandomTtArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000_000)]
    pub budget: u64,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub limit: Option<usize>,
    /// Lift the order guard.
    #[arg(long)]
    pub allow_large: bool,
    /// Enumerate all starters, not only strong ones.
    #[arg(long)]
    pub all_starters: bool,
}

/// Runs a parsed command and returns its exit code. Errors carry their own
/// code through [`exit_code`].
pub fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Triplicate(a) => commands::triplicate(a),
        Command::Keys(a) => commands::keys(a),
        Command::Verify(a) => commands::verify(a),
        Command::Solve(a) => commands::solve(a),
        Command::RandomTt(a) => commands::random_tt(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Batch(a) => batch::run(a),
    }
}

/// Exit code for a failed command: library errors map by kind, anything
/// else (I/O, parse errors) counts as invalid input.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    use triplication::Error as E;
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::InternalVerificationFailure(_) => exit::INTERNAL,
                E::Aborted { .. } | E::TooManySolutions { .. } => exit::ABORTED,
                _ => exit::INVALID,
            };
        }
    }
    exit::INVALID
}
