mod checks;
mod compute;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ggr_core::exactla::ScalarField;
use ggr_core::io::Workspace;

use report::{Failure, Outcome};

#[derive(Parser)]
#[command(name = "ggr", version, about = "Groupoid-graded rings and modules: validators, checks and functors")]
struct Cli {
    /// Field used for rings that do not name one (Q, F2, F3, ...).
    #[arg(long, env = "GGR_FIELD", default_value = "Q", global = true)]
    field: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every object of a file.
    Validate { file: PathBuf },
    /// Run a named check on objects given as `file#id` references.
    Check(CheckArgs),
    /// Compute a functor and write the result as a new object file.
    Compute(ComputeArgs),
}

#[derive(Args)]
pub struct CheckArgs {
    /// strongly-graded, morita, morita-criteria, equiv-rest,
    /// menini-nastasescu, restrict-subgroupoid, restrict-identities,
    /// restrict-hg, gr-equiv-sxr or adjunction.
    pub name: String,
    pub refs: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Flat coordinates of an idempotent, comma separated.
    #[arg(long)]
    pub unit: Option<String>,
    /// Objects whose local identities sum to the idempotent.
    #[arg(long)]
    pub unit_objects: Option<String>,
    /// Degrees (labels or indices), comma separated.
    #[arg(long)]
    pub degrees: Option<String>,
    /// Elements of a subgroupoid (labels or indices), comma separated.
    #[arg(long)]
    pub sub: Option<String>,
    /// Number of sampled instances for sampled checks.
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
}

#[derive(Args)]
pub struct ComputeArgs {
    /// ind, res, hotimes, hom, end, sxr, e-ring, shift, rhat, build-p or dual.
    pub functor: String,
    pub refs: Vec<String>,
    #[arg(short, long)]
    pub out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let field: ScalarField = match cli.field.parse() {
        Ok(f) => f,
        Err(e) => return report::emit_error("setup", &e.to_string()),
    };
    let mut ws = Workspace::new(field);
    let outcome = match &cli.command {
        Command::Validate { file } => checks::validate(&mut ws, file),
        Command::Check(args) => checks::run(&mut ws, args),
        Command::Compute(args) => compute::run(&mut ws, args),
    };
    match outcome {
        Ok(Outcome { report, verdict }) => report::emit(&report, if verdict { 0 } else { 1 }),
        Err(Failure::Axiom(report)) => report::emit(&report, 1),
        Err(Failure::Error(msg)) => report::emit_error(command_name(&cli.command), &msg),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Check(_) => "check",
        Command::Compute(_) => "compute",
    }
}
