use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use capdp_cli::bench::{self, BenchOptions, Suite};
use capdp_cli::generate::{self, DagShape, Family, MongeShape};
use capdp_cli::{parse_instance, run, CliError, Kind, RunOptions};

#[derive(Parser)]
#[command(name = "capdp", version, about = "Capacitated dynamic programming solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SolveArgs {
    kind: Kind,
    /// knapsack: bellman|td|value-domain; unbounded: dp|doubling|steinitz|value-domain;
    /// dag: dp|lagrangian; monge: dp|best-path|all-k|all-targets; sequence: dp|separated
    algo: String,
    file: PathBuf,
    /// Print the full profile when the solver produces one.
    #[arg(long)]
    profile: bool,
    /// Hop budget for dag and monge instances.
    #[arg(long)]
    k: Option<usize>,
    /// Accept knapsack items of weight or value 0.
    #[arg(long)]
    lax: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print a report.
    Solve {
        #[command(flatten)]
        args: SolveArgs,
        /// Cross-check against the oracle; exits 3 on disagreement.
        #[arg(long)]
        check: bool,
    },
    /// Same as `solve --check`.
    Check {
        #[command(flatten)]
        args: SolveArgs,
    },
    /// Run a benchmark suite and write CSV.
    Bench {
        /// knapsack-scaling | unbounded-T-independence | conv-linearity | separated-large | monge-all-k
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        /// Smaller sizes, for smoke runs.
        #[arg(long)]
        quick: bool,
    },
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
        #[arg(long, default_value_t = 42, global = true)]
        seed: u64,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// 0/1 knapsack items.
    Knapsack(ItemArgs),
    /// Unbounded knapsack items.
    Unbounded(ItemArgs),
    /// Node-weighted DAG with a universal source and sink.
    Dag {
        #[arg(long, value_enum, default_value_t = DagShape::Semiorder)]
        shape: DagShape,
        #[arg(long, default_value_t = 30)]
        n: usize,
        /// Rewards are drawn from -range..=range.
        #[arg(long, default_value_t = 100)]
        range: i64,
    },
    /// Complete Monge DAG on n+1 vertices.
    Monge {
        #[arg(long, value_enum, default_value_t = MongeShape::Squared)]
        shape: MongeShape,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        spread: i64,
    },
    /// Sequence for the separated-subsequence problem.
    Sequence {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        delta: usize,
        #[arg(long, default_value_t = 1000)]
        range: i64,
    },
}

#[derive(Args)]
struct ItemArgs {
    #[arg(long, value_enum, default_value_t = Family::Uncorrelated)]
    family: Family,
    /// Distinct weights, weight cap or value cap, depending on the family.
    #[arg(long, default_value_t = 16)]
    param: usize,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    range: usize,
    #[arg(long, default_value_t = 5000)]
    capacity: usize,
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(CliError::from),
    }
}

fn solve(args: &SolveArgs, check: bool) -> Result<(), CliError> {
    let src = fs::read_to_string(&args.file).map_err(|e| CliError::Io(format!("{}: {e}", args.file.display())))?;
    let inst = parse_instance(args.kind, &src, args.lax)?;
    let opts = RunOptions { check, profile: args.profile, k: args.k };
    let report = run(&args.algo, &inst, &opts)?;
    print!("{report}");
    if report.get("agreement") == Some("false") {
        return Err(CliError::Disagreement("solver and oracle values differ".into()));
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { args, check } => solve(&args, check),
        Command::Check { args } => solve(&args, true),
        Command::Bench { suite, seed, out, jobs, repeats, quick } => {
            let suite = Suite::from_name(&suite)?;
            let rows = bench::bench(suite, &BenchOptions { seed, jobs, repeats, quick })?;
            let mut buf = Vec::new();
            bench::write_csv(&rows, &mut buf)?;
            emit(&String::from_utf8(buf).expect("CSV is ASCII"), out.as_ref())
        }
        Command::Gen { what, seed, out } => {
            let text = match what {
                GenCommand::Knapsack(a) | GenCommand::Unbounded(a) => {
                    generate::items(a.family, a.param, a.n, a.range, a.capacity, seed)
                }
                GenCommand::Dag { shape, n, range } => generate::dag(shape, n, range, seed),
                GenCommand::Monge { shape, n, spread } => generate::monge(shape, n, spread, seed)?,
                GenCommand::Sequence { n, k, delta, range } => generate::sequence(n, k, delta, range, seed),
            };
            emit(&text, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("capdp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
