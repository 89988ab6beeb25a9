use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jtlab_cli::{explain, run, summary_line, Suite, SuiteConfig};
use jtlab_core::factories::FactorSpec;

#[derive(Parser)]
#[command(name = "jtlab", version, about = "A laboratory for finite-dimensional Jordan triple systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites over a list of factors and summarize the reports.
    Run(RunArgs),
    /// Print what a named check verifies.
    Explain {
        /// Check name as it appears in reports, e.g. `jti` or `locder-eq-der`.
        check: String,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Factor to test (repeatable): cstar:N, herm:N, type1:PxQ, hilbert:N,
    /// sum(a,b,...).  A default battery runs when omitted.
    #[arg(long = "factor", value_name = "SPEC")]
    factors: Vec<String>,
    /// Suite to run (repeatable); all suites when omitted.
    #[arg(long = "suite", value_enum, value_name = "NAME")]
    suites: Vec<Suite>,
    /// Run seed; every task derives its own stream from it.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Numerical tolerance for the checks.
    #[arg(long = "tol", default_value_t = 1e-9, value_name = "EPS")]
    tolerance: f64,
    /// Worker threads for task-level parallelism; runs serially when omitted.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    /// Probe budget for the pointwise closures (defaults to 50x the factor
    /// dimension).
    #[arg(long = "max-probes", value_name = "N")]
    max_probes: Option<usize>,
    /// Consecutive non-shrinking probes required before a closure stops.
    #[arg(long = "stability-window", default_value_t = 5, value_name = "N")]
    stability_window: usize,
    /// Write the full JSON report here.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) => match run_command(args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::from(2)
            }
        },
        Command::Explain { check } => match explain(&check) {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::from(2)
            }
        },
    }
}

fn run_command(args: RunArgs) -> anyhow::Result<bool> {
    let factors = args
        .factors
        .iter()
        .map(|s| s.parse::<FactorSpec>())
        .collect::<jtlab_core::Result<Vec<_>>>()?;
    let config = SuiteConfig {
        factors,
        suites: args.suites,
        seed: args.seed,
        tolerance: args.tolerance,
        jobs: args.jobs,
        max_probes: args.max_probes,
        stability_window: args.stability_window,
    };
    let report = run(&config)?;
    for entry in &report.entries {
        println!("{}", summary_line(entry));
    }
    let pass = report.pass();
    println!(
        "overall: {} ({} entries, seed {}, tol {:.1e})",
        if pass { "PASS" } else { "FAIL" },
        report.entries.len(),
        report.seed,
        report.tolerance
    );
    if let Some(path) = &args.out {
        std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
        println!("report written to {}", path.display());
    }
    Ok(pass)
}
