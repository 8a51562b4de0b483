//! `chernsub`: command-line driver for the Chern subgroup verifier.

mod expr;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chernsub::chern::{c1, c2, total_chern, DEFAULT_TRUNCATION};
use chernsub::repring::{oracle::DEFAULT_ORACLE_CAP, phi1_star};
use chernsub::verifier::{
    run_oracle, verify_theorem, OracleStatus, SweepSetting, VerificationReport, VerifyOptions,
    DEFAULT_SWEEP_LIMIT,
};
use chernsub::{Execution, Prime};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const ORACLE_CAP_ENV: &str = "CHERNSUB_ORACLE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "chernsub",
    version,
    about = "Exact verification of the Chern subgroup of H^4(BSU(p^2)/mu_p; Z)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full certificate for one or more primes.
    Verify(VerifyArgs),
    /// Restrict a lambda-expression to the circle and print its total Chern class.
    Chern(ChernArgs),
    /// Compare the closed-form circle restriction of each lambda_l with subset enumeration.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct ExecArgs {
    /// Run enumerations on a single thread.
    #[arg(long)]
    sequential: bool,
}

impl ExecArgs {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Prime to verify; repeat for several.
    #[arg(short = 'p', long = "prime", required = true, value_parser = parse_prime)]
    primes: Vec<Prime>,
    /// Truncation degree of the total Chern class (at least 2).
    #[arg(short = 'N', long = "degree", default_value_t = DEFAULT_TRUNCATION)]
    degree: usize,
    /// Sweep bound on the total degree of lambda monomials [default: 2p].
    #[arg(long, conflicts_with = "no_sweep")]
    sweep_degree: Option<u64>,
    /// Skip the monomial sweep.
    #[arg(long)]
    no_sweep: bool,
    /// Maximum number of monomials the sweep may enumerate.
    #[arg(long, default_value_t = DEFAULT_SWEEP_LIMIT)]
    sweep_limit: u64,
    /// Also run the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    /// Largest subset count C(p^2, l) the oracle will enumerate.
    #[arg(long, env = ORACLE_CAP_ENV, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    exec: ExecArgs,
}

#[derive(Debug, Args)]
struct ChernArgs {
    #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
    prime: Prime,
    /// Expression in L1..L<p^2-1>, integers, + - * ^ and parentheses; `p` is the prime.
    expression: String,
    #[arg(short = 'N', long = "degree", default_value_t = DEFAULT_TRUNCATION)]
    degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
    prime: Prime,
    /// Largest subset count C(p^2, l) to enumerate; larger l are skipped.
    #[arg(long, env = ORACLE_CAP_ENV, default_value_t = DEFAULT_ORACLE_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    exec: ExecArgs,
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let n: u64 = s
        .trim()
        .parse()
        .map_err(|_| format!("{s} is not a non-negative integer"))?;
    Prime::new(n).map_err(|e| e.to_string())
}

/// Configuration for `verify`, validated before any computation starts.
#[derive(Debug, Clone)]
struct RunConfig {
    primes: Vec<Prime>,
    options: VerifyOptions,
    format: Format,
    output: Option<PathBuf>,
}

impl RunConfig {
    fn from_args(args: VerifyArgs) -> Result<Self, String> {
        if args.primes.is_empty() {
            return Err("at least one prime is required".into());
        }
        if args.degree < 2 {
            return Err(format!("--degree must be at least 2, got {}", args.degree));
        }
        let sweep = match (args.no_sweep, args.sweep_degree) {
            (true, _) => SweepSetting::Disabled,
            (false, Some(d)) => SweepSetting::Bound(d),
            (false, None) => SweepSetting::Default,
        };
        Ok(RunConfig {
            primes: args.primes,
            options: VerifyOptions {
                truncation_degree: args.degree,
                sweep,
                sweep_limit: args.sweep_limit,
                oracle_cap: args.oracle.then_some(args.oracle_cap),
                execution: args.exec.execution(),
            },
            format: args.format,
            output: args.output,
        })
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), String> {
    match output {
        Some(path) => {
            fs::write(path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(content.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| format!("cannot write to standard output: {e}"))
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn cmd_verify(config: RunConfig) -> ExitCode {
    let mut reports: Vec<VerificationReport> = Vec::new();
    let mut failed = false;
    for &p in &config.primes {
        match verify_theorem(p, &config.options) {
            Ok(report) => {
                if p.is_odd() && !report.theorem_verified() {
                    failed = true;
                }
                reports.push(report);
            }
            Err(e) => {
                eprintln!("error: p = {p}: {e}");
                failed = true;
            }
        }
    }

    let content = match config.format {
        Format::Json if reports.len() == 1 => to_json(&reports[0]),
        Format::Json => to_json(&reports),
        Format::Text => reports
            .iter()
            .map(VerificationReport::render_text)
            .collect::<Vec<_>>()
            .join("\n"),
    };
    if let Err(e) = emit(config.output.as_ref(), &content) {
        return usage_error(e);
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_chern(args: ChernArgs) -> ExitCode {
    if args.degree < 2 {
        return usage_error(format!("--degree must be at least 2, got {}", args.degree));
    }
    let x = match expr::parse(&args.expression, args.prime) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("{}", args.expression);
            eprintln!("{}^", " ".repeat(e.column - 1));
            return usage_error(e);
        }
    };
    let image = phi1_star(&x);
    let chern = total_chern(&image, args.degree);
    let first = c1(&chern).expect("degree >= 2");
    let second = c2(&chern).expect("degree >= 2");

    let content = match args.format {
        Format::Text => format!(
            "p = {}\nx = {}\nweights = {}\ndim = {}\nc = {}\nc1 = {}\nc2 = {}\n",
            args.prime,
            x,
            image,
            image.dim(),
            chern,
            first,
            second
        ),
        Format::Json => {
            let weights: serde_json::Map<String, Value> = image
                .iter()
                .map(|(w, m)| (w.to_string(), Value::String(m.to_string())))
                .collect();
            to_json(&json!({
                "prime": args.prime.get(),
                "expression": x.to_string(),
                "weights": weights,
                "dim": image.dim().to_string(),
                "total_chern": chern.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "c1": first.to_string(),
                "c2": second.to_string(),
            }))
        }
    };
    match emit(None, &content) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage_error(e),
    }
}

fn cmd_oracle(args: OracleArgs) -> ExitCode {
    let p = args.prime;
    let summary = run_oracle(p, args.cap, args.exec.execution());
    let content = match args.format {
        Format::Json => to_json(&summary),
        Format::Text => {
            let mut s = format!("oracle p = {p}, cap = {}\n", summary.cap);
            for e in &summary.entries {
                let verdict = match e.status {
                    OracleStatus::Matched => "matched",
                    OracleStatus::Mismatched => "MISMATCH",
                    OracleStatus::Skipped => "skipped (over cap)",
                };
                s.push_str(&format!(
                    "  l={:<4} C(p^2, l)={:<12} {verdict}\n",
                    e.ell, e.subsets
                ));
            }
            let compared = summary.matched + summary.mismatched;
            s.push_str(&format!("{}/{compared} matched", summary.matched));
            if summary.skipped > 0 {
                let skipped: Vec<String> = summary
                    .entries
                    .iter()
                    .filter(|e| e.status == OracleStatus::Skipped)
                    .map(|e| e.ell.to_string())
                    .collect();
                s.push_str(&format!(
                    "; {} of {} skipped: l = {}",
                    summary.skipped,
                    summary.entries.len(),
                    skipped.join(", ")
                ));
            }
            s.push('\n');
            s
        }
    };
    if let Err(e) = emit(None, &content) {
        return usage_error(e);
    }
    if summary.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => match RunConfig::from_args(args) {
            Ok(config) => cmd_verify(config),
            Err(e) => usage_error(e),
        },
        Command::Chern(args) => cmd_chern(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}
