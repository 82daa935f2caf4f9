//! Command-line driver: `fpolylog verify <check> ...` and `fpolylog list-checks`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fpolylog::etale_congruence::ZArg;
use fpolylog::sweep::{self, parse_range, Check, Format, IdentityKind, SweepConfig};
use fpolylog::Error;

#[derive(Parser)]
#[command(
    name = "fpolylog",
    version,
    about = "Verify congruences between finite polylogarithms and p-adic cyclotomic units"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one check over a grid and write a report.
    Verify(Box<VerifyArgs>),
    /// Print the available checks.
    ListChecks,
}

#[derive(clap::Args)]
struct VerifyArgs {
    check: String,
    /// Inclusive prime range, e.g. 5..97.
    #[arg(long, default_value = "3..50")]
    primes: String,
    #[arg(long, default_value = "2..8")]
    m: String,
    /// Comma-separated arguments: -1, c^p, integers or a/b.
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    z: String,
    /// Comma-separated twist indices j (root r*ζ^j).
    #[arg(long, default_value = "0")]
    twists: String,
    #[arg(long, default_value_t = 4)]
    weight_max: u32,
    /// Largest N for the dilcher check.
    #[arg(long, default_value_t = 10)]
    n_max: u64,
    /// Coefficient precision M.
    #[arg(long, default_value_t = fpolylog::padic_cyclotomic::DEFAULT_PRECISION)]
    precision: u32,
    #[arg(long, default_value = "key_fn_eq")]
    identity: String,
    #[arg(long, env = sweep::JOBS_ENV)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "jsonl")]
    format: String,
    /// Record per-instance wall time (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
}

fn config(args: &VerifyArgs) -> Result<SweepConfig, Error> {
    let check: Check = args.check.parse()?;
    let mut cfg = SweepConfig::new(check);
    (cfg.prime_min, cfg.prime_max) = parse_range(&args.primes)?;
    (cfg.m_min, cfg.m_max) = parse_range(&args.m)?;
    cfg.z_list = args.z.split(',').map(str::parse::<ZArg>).collect::<Result<_, _>>()?;
    cfg.twists = args
        .twists
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::Config(format!("bad twist '{s}'"))))
        .collect::<Result<_, _>>()?;
    cfg.weight_max = args.weight_max;
    cfg.n_max = args.n_max;
    cfg.precision = args.precision;
    cfg.identity = args.identity.parse::<IdentityKind>()?;
    if let Some(j) = args.jobs {
        cfg.jobs = j;
    }
    cfg.timings = args.timings;
    Ok(cfg)
}

fn verify(args: VerifyArgs) -> Result<i32, Error> {
    let cfg = config(&args)?;
    let format: Format = args.format.parse()?;
    let outcome = sweep::run_sweep(&cfg)?;
    match &args.out {
        Some(path) => outcome.write(BufWriter::new(File::create(path)?), format)?,
        None => outcome.write(io::stdout().lock(), format)?,
    }
    eprintln!(
        "{}: {} passed, {} failed, {} skipped",
        cfg.check,
        outcome.passed(),
        outcome.failures(),
        outcome.skipped()
    );
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListChecks => {
            let mut out = io::stdout().lock();
            for entry in sweep::list_checks() {
                let _ =
                    writeln!(out, "{:<20} {}\n{:<20} grid: {}", entry.check.name(), entry.statement, "", entry.grid);
            }
            ExitCode::SUCCESS
        }
        Command::Verify(args) => match verify(*args) {
            Ok(code) => ExitCode::from(code as u8),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
