mod commands;
mod config;
mod exit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Deep right-nested conjunctions are walked recursively.
const WORKER_STACK: usize = 512 << 20;

#[derive(Parser, Debug)]
#[command(name = "traductive", version, about = "Workbench for languages A-F and their translative theories")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output mode.
    #[arg(long, value_enum, ignore_case = true, global = true)]
    pub format: Option<Format>,
    /// Seed for every randomized scan.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest materialized énoncé, in signs.
    #[arg(long, global = true, env = "TRADUCTIVE_MAX_NODES")]
    pub max_nodes: Option<usize>,
    /// Largest number of truth-table variables.
    #[arg(long, global = true, env = "TRADUCTIVE_MAX_VARS")]
    pub max_vars: Option<usize>,
    /// Largest number of instance evaluations per F-decision.
    #[arg(long, global = true, env = "TRADUCTIVE_MAX_STEPS")]
    pub max_steps: Option<u64>,
    /// TOML file with defaults and named schedules.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Record,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoryArg {
    A,
    B,
    C,
    D,
    F,
    /// The asymptotic family; only probed.
    Asymptotic,
    M,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    U,
    D,
    Steps,
    B,
}

/// A formula given inline or a batch file of one formula per line.
#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Formula text.
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    pub formula: Option<String>,
    /// Batch file; blank lines and `#` comments are skipped.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct RankArgs {
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    /// `p-ladder` or a schedule named in the config file.
    #[arg(long, default_value = "p-ladder")]
    pub schedule: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the canonical form, language and binding table.
    Parse(Input),
    /// Decide theoremhood in one theory.
    Decide {
        #[arg(long, value_enum, ignore_case = true)]
        theory: TheoryArg,
        #[command(flatten)]
        rank: RankArgs,
        #[command(flatten)]
        input: Input,
    },
    /// Run the pipeline u, d, [K on an F-énoncé.
    Translate {
        #[command(flatten)]
        rank: RankArgs,
        /// Print an intermediate stage instead of the D-énoncé.
        #[arg(long, value_enum, ignore_case = true)]
        stop_after: Option<Stage>,
        /// Print one line per stage.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Dictif conversions and set operations.
    Dictif {
        #[command(subcommand)]
        op: DictifOp,
    },
    /// Schema, axiom and scan checks.
    Check {
        #[command(subcommand)]
        check: CheckCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum DictifOp {
    /// Index, elements and properties of a dictif (`D#N`, `{…}`, `δ…ς`).
    Show { dictif: String },
    /// The iterated powerset P_N.
    PLevel { n: usize },
    /// `x ∈ z`.
    Member { x: String, z: String },
    Union { a: String, b: String },
    Inter { a: String, b: String },
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// The three Boolean schemas and modus ponens closure.
    Schemas {
        #[arg(long, value_enum, ignore_case = true, default_value = "b")]
        theory: TheoryArg,
        #[command(flatten)]
        rank: RankArgs,
        /// Number of generated component énoncés.
        #[arg(long, default_value_t = 300)]
        samples: usize,
        /// Largest component size.
        #[arg(long, default_value_t = 9)]
        size: usize,
    },
    /// The equality schema over all pairs of elements of C_K.
    Equality {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value = "p-ladder")]
        schedule: String,
    },
    /// The foundation axiom.
    Foundation {
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Exactly one of e, ¬e is a theorem.
    Coherence {
        #[arg(long, value_enum, ignore_case = true)]
        theory: TheoryArg,
        #[command(flatten)]
        rank: RankArgs,
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 9)]
        size_bound: usize,
        #[arg(long, default_value_t = 8)]
        dictif_bound: u64,
        /// Largest size of a random sample.
        #[arg(long, default_value_t = 20)]
        sample_size: usize,
    },
    /// Per-rank verdicts over a window of ranks.
    Asymptotic {
        formula: String,
        #[arg(long, default_value_t = 1)]
        start: usize,
        #[arg(long, default_value_t = 4)]
        window: usize,
        #[arg(long, default_value = "p-ladder")]
        schedule: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let worker = std::thread::Builder::new()
        .stack_size(WORKER_STACK)
        .spawn(move || commands::run(cli))
        .expect("spawn worker thread");
    let code = worker.join().unwrap_or(exit::USAGE);
    ExitCode::from(code)
}
