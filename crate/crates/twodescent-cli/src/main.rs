//! `twodescent` binary: analyze single curves, sieve ranges, cross-check the
//! fast path against the oracle, and reproduce the two-prime reference
//! tables.
//!
//! Exit codes: 0 success; 1 usage error (bad arguments or unwritable
//! output); 2 internal invariant violation; 3 crosscheck or table mismatch.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use twodescent::squareclass::FactoredD;
use twodescent::{sieve, Error};
use twodescent_cli::output::{write_records, Format};
use twodescent_cli::tables;

#[derive(Parser)]
#[command(
    name = "twodescent",
    version,
    about = "Selmer groups, Tamagawa ratios, and rank bounds for y^2 = x^3 +/- 2Dx"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for a single D given by its odd prime factors
    Analyze(AnalyzeArgs),
    /// Reports for every squarefree D with prime factors below a bound
    Sieve(SieveArgs),
    /// Compare the linear-algebra fast path against the brute-force oracle
    Crosscheck(CrosscheckArgs),
    /// Check the built-in two-prime member tables against the oracle
    VerifyTables(VerifyTablesArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Distinct odd primes dividing D, in any order
    #[arg(required = true)]
    primes: Vec<u64>,
    /// Comma-separated exponents (1 or 3), one per prime; default all 1
    #[arg(long, value_delimiter = ',')]
    exponents: Option<Vec<u8>>,
    /// Include the four Selmer member lists in the output
    #[arg(long)]
    emit_members: bool,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SieveArgs {
    /// Strict upper bound on the primes dividing D
    #[arg(long)]
    prime_bound: u64,
    /// Largest number of distinct prime factors per D
    #[arg(long)]
    n_max: usize,
    /// Emit only records with the rank-0 or conditional rank-1 flag set
    #[arg(long)]
    flagged_only: bool,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the per-D computations
    #[arg(long, default_value_t = 1)]
    parallel: usize,
}

#[derive(Args)]
struct CrosscheckArgs {
    /// Strict upper bound on the primes dividing D
    #[arg(long)]
    prime_bound: u64,
    /// Largest number of distinct prime factors per D
    #[arg(long)]
    n_max: usize,
    /// Worker threads for the per-D computations
    #[arg(long, default_value_t = 1)]
    parallel: usize,
}

#[derive(Args)]
struct VerifyTablesArgs {
    /// Strict upper bound on the primes used to realize each residue class
    #[arg(long, default_value_t = 500)]
    max_prime: u64,
}

/// A failed command together with its process exit code.
enum Failure {
    /// Bad input or unusable output destination (exit 1).
    Usage(String),
    /// A computation violated an internal invariant (exit 2).
    Internal(String),
    /// A comparison command found a genuine disagreement (exit 3).
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Internal(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Internal(m) | Failure::Mismatch(m) => m,
        }
    }
}

fn classify(err: Error) -> Failure {
    match err {
        Error::NotOddPrime(_)
        | Error::PrimesOutOfOrder(_)
        | Error::BadExponent(_)
        | Error::EmptyFactorization
        | Error::TooManyPrimes { .. }
        | Error::BoundExceeded { .. } => Failure::Usage(err.to_string()),
        _ => Failure::Internal(err.to_string()),
    }
}

fn io_failure(err: io::Error) -> Failure {
    Failure::Usage(format!("output error: {err}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code: u8 = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Sieve(args) => cmd_sieve(args),
        Command::Crosscheck(args) => cmd_crosscheck(args),
        Command::VerifyTables(args) => cmd_verify_tables(args),
    }
}

fn open_out(out: Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match out {
        None => Ok(Box::new(io::stdout())),
        Some(path) => {
            let file = File::create(&path)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(Box::new(io::BufWriter::new(file)))
        }
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let exponents = match args.exponents {
        Some(list) => {
            if list.len() != args.primes.len() {
                return Err(Failure::Usage(format!(
                    "--exponents lists {} values for {} primes",
                    list.len(),
                    args.primes.len()
                )));
            }
            list
        }
        None => vec![1; args.primes.len()],
    };
    let mut pairs: Vec<(u64, u8)> = args.primes.into_iter().zip(exponents).collect();
    pairs.sort_unstable();
    let (primes, exponents) = pairs.into_iter().unzip();
    let ctx = FactoredD::new(primes, exponents).map_err(classify)?;
    let record = sieve::analyze(&ctx, args.emit_members).map_err(classify)?;
    let mut out = open_out(args.out)?;
    write_records(
        &mut out,
        std::slice::from_ref(&record),
        args.format,
        args.emit_members,
    )
    .map_err(io_failure)?;
    out.flush().map_err(io_failure)
}

fn cmd_sieve(args: SieveArgs) -> Result<(), Failure> {
    if args.prime_bound < 3 {
        return Err(Failure::Usage(format!(
            "--prime-bound must be at least 3, got {}",
            args.prime_bound
        )));
    }
    if args.n_max < 1 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    if args.parallel < 1 {
        return Err(Failure::Usage("--parallel must be at least 1".into()));
    }
    let mut records = sieve::run(args.prime_bound, args.n_max, args.parallel).map_err(classify)?;
    if args.flagged_only {
        records.retain(|r| r.report.rank0 || r.report.rank1_conditional);
    }
    let mut out = open_out(args.out)?;
    write_records(&mut out, &records, args.format, false).map_err(io_failure)?;
    out.flush().map_err(io_failure)
}

fn cmd_crosscheck(args: CrosscheckArgs) -> Result<(), Failure> {
    if args.prime_bound < 3 {
        return Err(Failure::Usage(format!(
            "--prime-bound must be at least 3, got {}",
            args.prime_bound
        )));
    }
    if args.n_max < 1 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    if args.parallel < 1 {
        return Err(Failure::Usage("--parallel must be at least 1".into()));
    }
    let outcome =
        sieve::crosscheck(args.prime_bound, args.n_max, args.parallel).map_err(classify)?;
    match outcome.mismatch {
        None => {
            println!(
                "crosscheck: fast path and oracle agree on all {} factorizations \
                 (primes < {}, n <= {})",
                outcome.tested, args.prime_bound, args.n_max
            );
            Ok(())
        }
        Some(m) => {
            let d = m
                .primes
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" * ");
            Err(Failure::Mismatch(format!(
                "crosscheck mismatch at D = {d}, group {}: {}",
                m.family, m.detail
            )))
        }
    }
}

fn cmd_verify_tables(args: VerifyTablesArgs) -> Result<(), Failure> {
    let outcomes = tables::verify_tables(args.max_prime).map_err(classify)?;
    let mut failed = 0usize;
    for outcome in &outcomes {
        let status = if outcome.passed { "pass" } else { "FAIL" };
        println!(
            "table {} row (p%8={}, q%8={}, (p/q)={:+}): {status} [{}]",
            outcome.row.table,
            outcome.row.p_mod8,
            outcome.row.q_mod8,
            outcome.row.symbol_pq,
            outcome.detail
        );
        if !outcome.passed {
            failed += 1;
        }
    }
    let total = outcomes.len();
    if failed == 0 {
        println!("verify-tables: all {total} rows pass");
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "verify-tables: {failed} of {total} rows failed or were inconclusive"
        )))
    }
}
