//! `vmlab`: generators, graph operations, verification suites, containment
//! search and formula evaluation from the command line.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "vmlab",
    version,
    about = "Exact experiments with flips and vertex-minors"
)]
pub struct Cli {
    /// Seed for random generators and verification suites.
    #[arg(long, global = true, env = "VMLAB_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Trial count for `verify`; each suite has its own default.
    #[arg(long, global = true, env = "VMLAB_TRIALS")]
    pub trials: Option<usize>,

    /// Largest host order (for `contains`) or domain size (for `eval`).
    #[arg(long, global = true, env = "VMLAB_CAP_N")]
    pub cap_n: Option<usize>,

    /// Largest search depth for `contains`.
    #[arg(long, global = true, env = "VMLAB_CAP_DEPTH")]
    pub cap_depth: Option<usize>,

    #[arg(long, global = true, env = "VMLAB_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
    JsonWitness,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph family member; `--out` also writes `<out>.labels`.
    Gen {
        family: String,
        params: Vec<String>,
        /// Flip the layers of a crossing by this `(r+2)×(r+2)` 0/1 matrix file.
        #[arg(long)]
        layer_tau: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded property suite; exits 1 when any trial fails.
    Verify {
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        /// Include the slow sizes.
        #[arg(long)]
        extended: bool,
        /// Also write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Apply an operation to a graph file.
    Op {
        name: String,
        graph: PathBuf,
        args: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether `h` is a depth-r vertex-minor of `g` up to isomorphism.
    Contains { g: PathBuf, h: PathBuf, r: usize },
    /// Evaluate a formula on a structure under `var=id` assignments.
    Eval {
        structure: PathBuf,
        formula: PathBuf,
        assignment: Vec<String>,
        /// Definitions usable inside the formula.
        #[arg(long)]
        defs: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
