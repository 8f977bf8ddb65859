use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use plp::generator::GenConfig;
use plp::reduct::{ConditionBReading, ReductConfig};
use plp::report::{self, Report, ReportError, SolveOptions};
use plp::solver::{SolverConfig, DEFAULT_CAP};
use plp::split::BlockCount;

#[derive(Parser)]
#[command(name = "plp", version, about = "Answer sets of prioritized extended logic programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Most literals the answer set search may guess over
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Largest removal set tried in one reduct step
    #[arg(long, global = true)]
    max_removal: Option<usize>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Answer sets of a program
    Solve {
        file: PathBuf,
        /// Solve block by block
        #[arg(long)]
        via_split: bool,
        /// With --via-split, compare against the direct solution
        #[arg(long, requires = "via_split")]
        check: bool,
        /// Number of blocks for --via-split ("max" for one per component)
        #[arg(long, value_parser = parse_blocks)]
        blocks: Option<BlockCount>,
    },
    /// Print the ground instantiation
    Ground { file: PathBuf },
    /// Reducts with one witnessing chain each
    Reducts {
        file: PathBuf,
        /// Also run the "any dominator" reading of condition (b) and report divergences
        #[arg(long)]
        strict: bool,
    },
    /// Partition, stratification, mutual defeasibility and uniqueness certificate
    Analyze { file: PathBuf },
    /// Split plan, derived programs and recombined answer sets
    Split {
        file: PathBuf,
        #[arg(long, value_parser = parse_blocks)]
        blocks: Option<BlockCount>,
    },
    /// Check semantic invariants on generated programs
    Fuzz {
        iterations: u64,
        #[command(flatten)]
        gen: GenArgs,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "gen-atoms", default_value_t = 4)]
    atoms: usize,
    #[arg(long = "gen-rules", default_value_t = 6)]
    rules: usize,
    #[arg(long = "gen-max-body", default_value_t = 2)]
    max_body: usize,
    #[arg(long = "gen-naf", default_value_t = 0.5)]
    naf: f64,
    #[arg(long = "gen-classical-neg", default_value_t = 0.2)]
    classical_neg: f64,
    #[arg(long = "gen-preference-density", default_value_t = 0.2)]
    preference_density: f64,
    #[arg(long = "gen-constraints", default_value_t = 0.0)]
    constraints: f64,
}

fn parse_blocks(s: &str) -> Result<BlockCount, String> {
    if s == "max" {
        return Ok(BlockCount::Max);
    }
    match s.parse::<usize>() {
        Ok(k) if k >= 2 => Ok(BlockCount::Exactly(k)),
        _ => Err("expected a number of at least 2 or \"max\"".into()),
    }
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(1)
    })
}

fn run(cli: &Cli, command: &str) -> Result<Report, ExitCode> {
    let cfg = ReductConfig {
        solver: SolverConfig { cap: cli.cap },
        max_removal_size: cli.max_removal,
        reading: ConditionBReading::SameDominator,
    };
    let result: Result<Report, ReportError> = match &cli.command {
        Command::Solve { file, via_split, check, blocks } => {
            let opts =
                SolveOptions { via_split: *via_split, check: *check, blocks: blocks.unwrap_or_default(), reduct: cfg };
            report::solve(command, &read(file)?, &opts)
        }
        Command::Ground { file } => report::ground_report(command, &read(file)?),
        Command::Reducts { file, strict } => report::reducts(command, &read(file)?, &cfg, *strict),
        Command::Analyze { file } => report::analyze(command, &read(file)?, &cfg),
        Command::Split { file, blocks } => report::split(command, &read(file)?, blocks.unwrap_or_default(), &cfg),
        Command::Fuzz { iterations, gen } => {
            let base = GenConfig {
                seed: gen.seed,
                atom_count: gen.atoms,
                rule_count: gen.rules,
                max_body: gen.max_body,
                naf_probability: gen.naf,
                classical_neg_probability: gen.classical_neg,
                preference_density: gen.preference_density,
                constraint_probability: gen.constraints,
            };
            report::fuzz(command, *iterations, &base, &cfg)
        }
    };
    result.map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(e.exit_code() as u8)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let command = format!("plp {}", args.join(" "));
    match run(&cli, &command) {
        Ok(report) => {
            print!("{}", report.render(cli.json));
            ExitCode::from(report.exit_code as u8)
        }
        Err(code) => code,
    }
}
