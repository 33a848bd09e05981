use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;
mod report;

use report::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "intiles",
    version,
    about = "Translational tilings of the integers and cyclic groups"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum, (T1)/(T2) and diameter bounds for a finite set.
    Analyze(SetInput),
    /// Verify `A ⊕ B = Z_M` by residue counting and by cyclotomic divisibility.
    CheckTiling(TilingArgs),
    /// Smallest period of a tiling of Z by translates of a set.
    MinPeriod(MinPeriodArgs),
    /// Generate an explicit construction.
    #[command(subcommand)]
    Construct(Construct),
    /// The set with mask Φ_{p²}Φ_{q²} and its diameter comparison.
    Counterexample(CounterexampleArgs),
    /// Analyze every normalized set of bounded diameter, one JSON line each.
    Corpus(CorpusArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SetInput {
    /// Comma-separated nonnegative integers, e.g. `0,1,3`.
    #[arg(long, value_name = "LIST")]
    set: Option<String>,
    /// JSON file holding an array of integers or `{"set": [...]}`.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TilingArgs {
    /// The tile `A`, comma-separated.
    #[arg(long, value_name = "LIST", conflicts_with = "input", requires_all = ["complement", "modulus"])]
    set: Option<String>,
    /// The translation set `B`, comma-separated.
    #[arg(long, value_name = "LIST", conflicts_with = "input")]
    complement: Option<String>,
    #[arg(long, short = 'm', conflicts_with = "input")]
    modulus: Option<u64>,
    /// JSON file `{"tile": [...], "complement": [...], "modulus": M}`.
    #[arg(long, value_name = "PATH", required_unless_present = "set")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Restricted,
    Unrestricted,
}

#[derive(Args, Debug)]
pub struct MinPeriodArgs {
    #[command(flatten)]
    set: SetInput,
    /// Largest modulus to try; below (2D)^d a negative answer is inconclusive.
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long, value_enum, default_value_t = Mode::Restricted)]
    mode: Mode,
    /// Worker threads; 0 uses all cores.
    #[arg(long, env = "INTILES_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Per-modulus limit on search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Skip moduli ruled out by cyclotomic counting.
    #[arg(long)]
    prune: bool,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Long-period tiling from three primes `p1 < p2 < p3 < 2·p1`.
    Theorem2(Theorem2Args),
    /// Complete residue system built from prime-power towers.
    Standard(StandardArgs),
}

#[derive(Args, Debug)]
pub struct Theorem2Args {
    /// Three primes, comma-separated.
    #[arg(long, value_name = "P1,P2,P3", default_value = "7,11,13")]
    p: String,
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Target exponent, a rational such as `11/10`.
    #[arg(long)]
    beta: Option<String>,
    /// Rational slack parameter.
    #[arg(long)]
    epsilon: Option<String>,
}

#[derive(Args, Debug)]
pub struct StandardArgs {
    /// Prime powers as `p^a` or `p`, comma-separated, e.g. `2^2,3`.
    #[arg(long, value_name = "LIST")]
    primes: String,
}

#[derive(Args, Debug)]
pub struct CounterexampleArgs {
    #[arg(long, default_value_t = 7)]
    p: u64,
    #[arg(long, default_value_t = 11)]
    q: u64,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    #[arg(long, default_value_t = 10)]
    max_diameter: u32,
    /// Worker threads; 0 uses all cores.
    #[arg(long, env = "INTILES_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Permit diameters above the safety limit.
    #[arg(long)]
    allow_large: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(args) => commands::analyze(&args, cli.format),
        Command::CheckTiling(args) => commands::check_tiling(&args, cli.format),
        Command::MinPeriod(args) => commands::min_period(&args, cli.format),
        Command::Construct(Construct::Theorem2(args)) => commands::theorem2(&args, cli.format),
        Command::Construct(Construct::Standard(args)) => commands::standard(&args, cli.format),
        Command::Counterexample(args) => commands::counterexample(&args, cli.format),
        Command::Corpus(args) => commands::corpus(&args, cli.format),
    };
    match outcome {
        Outcome::Done(code) => ExitCode::from(code),
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(report::EXIT_USAGE)
        }
        Outcome::Fault(msg) => {
            eprintln!("internal fault: {msg}");
            ExitCode::from(report::EXIT_FAULT)
        }
    }
}
