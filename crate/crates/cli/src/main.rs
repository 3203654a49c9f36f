use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cubic_harness::bench::Distribution;
use cubic_harness::json::to_line;
use cubic_harness::{
    parse_input, run_audit, run_batch, run_bench, run_check, validate_tol, AuditConfig, BenchConfig, HarnessError,
    Method, SolveRecord, DEFAULT_TOL, TOL_ENV,
};
use uniform_cubic::eigen3::{ChainOptions, InjectedTypo};
use uniform_cubic::{Erratum, Formulas};

#[derive(Parser)]
#[command(name = "ucubic", version, about = "Branch-free cubic roots and 3x3 spectra, with audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one cubic (6 numbers) or matrix (18 numbers) per line.
    Solve {
        #[arg(long, value_enum, default_value = "uniform")]
        method: Method,
        /// Input file, `-` for stdin.
        #[arg(long, default_value = "-")]
        input: String,
        /// Residual bound reported as `within_tol`.
        #[arg(long, env = TOL_ENV, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run the double-root criterion on each input.
    Check {
        /// Required for symmetry with the documented invocation.
        #[arg(long)]
        criterion: bool,
        #[arg(long, default_value = "-")]
        input: String,
        /// Criterion threshold relative to the root scale.
        #[arg(long, env = TOL_ENV, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Time uniform, Cardano and the oracle on a seeded ensemble.
    Bench {
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "roots")]
        distribution: Distribution,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit every identity on seeded random instances and write a JSON report.
    Audit {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Use every formula as printed instead of the corrected forms.
        #[arg(long)]
        as_printed: bool,
        /// Revert a single correction.
        #[arg(long, value_enum, conflicts_with = "as_printed")]
        printed: Option<ErratumArg>,
        /// Flip a sign in the chain to check that the audit notices.
        #[arg(long)]
        inject_typo: bool,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ErratumArg {
    E2Square,
    N1Term,
    N3Term,
    N8Term,
    N4Divisor,
    L3,
    SqrtNegDeltaO,
    SqrtNegThreeDeltaO,
}

impl From<ErratumArg> for Erratum {
    fn from(e: ErratumArg) -> Self {
        match e {
            ErratumArg::E2Square => Erratum::E2Square,
            ErratumArg::N1Term => Erratum::N1Term,
            ErratumArg::N3Term => Erratum::N3Term,
            ErratumArg::N8Term => Erratum::N8Term,
            ErratumArg::N4Divisor => Erratum::N4Divisor,
            ErratumArg::L3 => Erratum::L3,
            ErratumArg::SqrtNegDeltaO => Erratum::SqrtNegDeltaO,
            ErratumArg::SqrtNegThreeDeltaO => Erratum::SqrtNegThreeDeltaO,
        }
    }
}

fn read_input(path: &str) -> Result<String, HarnessError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn emit(records: &[SolveRecord]) -> Result<(), HarnessError> {
    let mut out = BufWriter::new(io::stdout().lock());
    for r in records {
        writeln!(out, "{}", to_line(r)?)?;
    }
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Solve { method, input, tol } => {
            let tol = validate_tol(tol)?;
            let inputs = parse_input(&read_input(&input)?)?;
            emit(&run_batch(&inputs, method, tol))
        }
        Command::Check { criterion: _, input, tol } => {
            let tol = validate_tol(tol)?;
            let inputs = parse_input(&read_input(&input)?)?;
            emit(&run_check(&inputs, tol))
        }
        Command::Bench { count, seed, distribution, out } => {
            let report = run_bench(&BenchConfig { count, seed, distribution })?;
            let text = serde_json::to_string_pretty(&report)?;
            println!("{text}");
            if let Some(path) = out {
                fs::write(path, text + "\n")?;
            }
            Ok(())
        }
        Command::Audit { count, seed, out, as_printed, printed, inject_typo } => {
            let formulas = match (as_printed, printed) {
                (true, _) => Formulas::as_printed(),
                (false, Some(e)) => Formulas::only(e.into()),
                (false, None) => Formulas::default(),
            };
            let chain = ChainOptions { formulas, typo: inject_typo.then_some(InjectedTypo::FlipE2Sign) };
            let run = run_audit(&AuditConfig { count, seed, chain })?;
            fs::write(&out, serde_json::to_string_pretty(&run)? + "\n")?;
            let flagged: Vec<&str> = run.errata.iter().map(|e| e.identity.as_str()).collect();
            if flagged.is_empty() {
                println!("audit: {count} instances, no identity flagged");
            } else {
                println!("audit: {count} instances, flagged: {}", flagged.join(", "));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ucubic: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
