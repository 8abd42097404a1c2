//! Scenario runner and certificate reporter.
//!
//! Exit status: 0 success, 2 mathematical negative (honestly reported),
//! 3 inconclusive (a cap was hit), 4 input or schema error.

use clap::{Args, Parser, Subcommand};
use nclift::scenario::{run_scenario, verify_report, Report, Scenario, Task, INPUT_ERROR_EXIT};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "nclift", version)]
#[command(about = "exact factorization lifting over filtered noncommutative algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Scenario file (JSON).
    #[arg(long)]
    scenario: PathBuf,

    /// Override the scenario's seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Override the scenario's search/enumeration caps.
    #[arg(long)]
    cap: Option<u128>,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lift a coprime monic residue factorization (left-handed).
    Lift(RunArgs),
    /// Right-handed lift through the opposite algebra.
    RightLift(RunArgs),
    /// Verify a claimed factorization exactly.
    Verify(RunArgs),
    /// Exhaustively enumerate monic factor pairs.
    BruteForce(RunArgs),
    /// Jacobson / perfect / local checks and filtration hypotheses.
    CheckPair(RunArgs),
    /// Compute the commutator filtration until stabilization.
    CommutatorFiltration(RunArgs),
    /// Search for a Bezout coprimality certificate.
    Bezout(RunArgs),
    /// Euclidean division by a monic polynomial with ideal bookkeeping.
    Divide(RunArgs),
    /// Build a simple LF-extension and optionally its universal map.
    LfExtend(RunArgs),
    /// Compare the abelianized LF-extension with the commutative lift.
    AbelianizeCompare(RunArgs),
    /// Re-check every certificate of an emitted report.
    VerifyReport {
        /// Report file produced by a run.
        #[arg(long)]
        report: PathBuf,
        /// The scenario the report claims to come from.
        #[arg(long)]
        scenario: PathBuf,
    },
}

fn run(args: &RunArgs, task: Task) -> i32 {
    let text = match std::fs::read_to_string(&args.scenario) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.scenario.display());
            return INPUT_ERROR_EXIT;
        }
    };
    let mut scenario = match Scenario::from_json(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return INPUT_ERROR_EXIT;
        }
    };
    if scenario.task != task {
        eprintln!(
            "error: scenario task is {}, subcommand expects {}",
            scenario.task.name(),
            task.name()
        );
        return INPUT_ERROR_EXIT;
    }
    if let Some(seed) = args.seed {
        scenario.seed = seed;
    }
    if let Some(cap) = args.cap {
        let mut caps = scenario.caps.unwrap_or_default();
        caps.search_space = Some(cap);
        caps.enumeration = Some(cap);
        scenario.caps = Some(caps);
    }

    match run_scenario(&scenario) {
        Err(e) => {
            eprintln!("error: {e}");
            INPUT_ERROR_EXIT
        }
        Ok(report) => {
            emit(&report, args.out.as_deref());
            report.exit_code()
        }
    }
}

fn emit(report: &Report, out: Option<&std::path::Path>) {
    let json = report.to_json();
    match out {
        None => println!("{json}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("error: cannot write {}: {e}", path.display());
            } else {
                println!(
                    "{}: {} ({})",
                    report.body.task.name(),
                    match report.body.outcome.status {
                        nclift::scenario::Status::Ok => "ok",
                        nclift::scenario::Status::Negative => "negative",
                        nclift::scenario::Status::Inconclusive => "inconclusive",
                    },
                    report.body.outcome.detail
                );
            }
        }
    }
}

fn run_verify_report(report: &PathBuf, scenario: &PathBuf) -> i32 {
    let report_text = match std::fs::read_to_string(report) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", report.display());
            return INPUT_ERROR_EXIT;
        }
    };
    let scenario_text = match std::fs::read_to_string(scenario) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", scenario.display());
            return INPUT_ERROR_EXIT;
        }
    };
    match verify_report(&report_text, &scenario_text) {
        Err(e) => {
            eprintln!("error: {e}");
            INPUT_ERROR_EXIT
        }
        Ok(outcome) => {
            if outcome.ok {
                println!("report verified: every certificate re-checks");
                0
            } else {
                println!("report FAILED verification:");
                for f in &outcome.failures {
                    println!("  - {f}");
                }
                2
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::VerifyReport { report, scenario } => run_verify_report(report, scenario),
        Command::Lift(a) => run(a, Task::Lift),
        Command::RightLift(a) => run(a, Task::RightLift),
        Command::Verify(a) => run(a, Task::Verify),
        Command::BruteForce(a) => run(a, Task::BruteForce),
        Command::CheckPair(a) => run(a, Task::CheckPair),
        Command::CommutatorFiltration(a) => run(a, Task::CommutatorFiltration),
        Command::Bezout(a) => run(a, Task::Bezout),
        Command::Divide(a) => run(a, Task::Divide),
        Command::LfExtend(a) => run(a, Task::LfExtend),
        Command::AbelianizeCompare(a) => run(a, Task::AbelianizeCompare),
    };
    ExitCode::from(code as u8)
}
