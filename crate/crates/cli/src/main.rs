//! lab: exact-arithmetic checks for Lie algebra cohomology, scalar
//! restriction kernels, and distribution-algebra norms.
//!
//! Every command emits one JSON report (stdout or --out) and a short
//! human summary on stderr. The JSON is byte-deterministic; timing only
//! ever appears on stderr. Exit codes: 0 all checks pass, 1 some check
//! fails or a golden report mismatches, 2 bad input.

mod commands;
mod job;
mod report;
mod suite;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use job::{assemble, CliError, JobInput};
use report::{Check, Report, Status};

#[derive(Parser)]
#[command(
    name = "lab",
    about = "Exact checks for Lie algebra cohomology and p-adic norms"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate field, algebra, and module definitions.
    Validate(JobArgs),
    /// Cohomology dimension tables for an algebra and module.
    Cohomology(JobArgs),
    /// Kernel-ideal cohomology and the torus decomposition checks.
    Tvectors(JobArgs),
    /// Radius constants, series norms, and multiplicativity checks.
    Norms(JobArgs),
    /// Run a named check suite and compare it against the golden report.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct JobArgs {
    /// JSON job description.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Built-in algebra, e.g. heisenberg(3); overrides the job file.
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
    /// Set or override a job parameter.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    /// Suite name; `all` runs every member.
    #[arg(default_value = "all")]
    name: String,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Cmd::Validate(args) => run_job(
            "validate",
            commands::VALIDATE_PARAMS,
            commands::cmd_validate,
            args,
        ),
        Cmd::Cohomology(args) => run_job(
            "cohomology",
            commands::COHOMOLOGY_PARAMS,
            commands::cmd_cohomology,
            args,
        ),
        Cmd::Tvectors(args) => run_job(
            "tvectors",
            commands::TVECTORS_PARAMS,
            commands::cmd_tvectors,
            args,
        ),
        Cmd::Norms(args) => run_job("norms", commands::NORMS_PARAMS, commands::cmd_norms, args),
        Cmd::Suite(args) => run_suite(args),
    }
}

fn run_job(
    name: &str,
    allowed: &[&str],
    f: impl Fn(&JobInput) -> Result<Vec<Check>, CliError>,
    args: JobArgs,
) -> Result<bool, CliError> {
    let started = Instant::now();
    let job = assemble(
        args.input.as_deref(),
        args.catalog.as_deref(),
        &args.params,
        allowed,
    )?;
    let checks = f(&job)?;
    let echo = serde_json::to_value(&job).expect("jobs serialize");
    let report = Report::new(name, echo, checks);
    write_report(&report, args.out.as_deref())?;
    summarize(&report, started);
    Ok(report.all_pass())
}

fn run_suite(args: SuiteArgs) -> Result<bool, CliError> {
    let started = Instant::now();
    let checks = suite::run(&args.name)?;
    let report = Report::new("suite", serde_json::json!({ "suite": args.name }), checks);
    write_report(&report, args.out.as_deref())?;
    summarize(&report, started);
    let golden_ok = compare_golden(&args.name, &report.render())?;
    Ok(report.all_pass() && golden_ok)
}

fn write_report(report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    let text = report.render();
    match out {
        Some(path) => fs::write(path, &text)
            .map_err(|e| CliError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn summarize(report: &Report, started: Instant) {
    let mut pass = 0;
    let mut fail = 0;
    let mut skipped = 0;
    for check in &report.checks {
        let tag = match check.status {
            Status::Pass => {
                pass += 1;
                " ok "
            }
            Status::Fail => {
                fail += 1;
                "FAIL"
            }
            Status::Skipped => {
                skipped += 1;
                "skip"
            }
        };
        eprintln!("[{tag}] {}", check.name);
    }
    eprintln!(
        "{}: {} checks, {} passed, {} failed, {} skipped in {:.2?}",
        report.command,
        report.checks.len(),
        pass,
        fail,
        skipped,
        started.elapsed()
    );
}

/// Compares a suite report against its stored golden copy, if one exists.
/// LAB_GOLDEN_DIR overrides the location.
fn compare_golden(name: &str, text: &str) -> Result<bool, CliError> {
    let dir = std::env::var_os("LAB_GOLDEN_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            Path::new(env!("CARGO_MANIFEST_DIR"))
                .join("golden")
                .join("v1")
        });
    let path = dir.join(format!("{name}.json"));
    if !path.exists() {
        eprintln!(
            "note: no golden report at {}; comparison skipped",
            path.display()
        );
        return Ok(true);
    }
    let golden = fs::read_to_string(&path)
        .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
    if golden == text {
        eprintln!("golden report matches: {}", path.display());
        Ok(true)
    } else {
        eprintln!("golden report MISMATCH: {}", path.display());
        Ok(false)
    }
}
