//! The `trinom` command line.
//!
//! Exit codes: 0 success, 1 verification violation, 2 usage or input error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::analysis::{is_palindrome, verify_theorem, zero_pattern, AnalysisError};
use crate::lucas::{lucas_eval, parse_decimal, LucasError};
use crate::modmath::{primes_in_range, ModError, Modulus};
use crate::report::{TableReport, VerifyReport};
use crate::sequences::{
    cached_table, exact_terms, table_via_poly_pow, table_via_recurrence, Provenance, QuadraticSpec,
    SequenceError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid spec {raw:?}: bad token {token:?}")]
    Spec { raw: String, token: String },
    #[error("invalid prime range {0:?}, expected lo..hi")]
    Range(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = 2 is not supported here; an odd prime is required")]
    EvenPrime,
    #[error(transparent)]
    Mod(#[from] ModError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Lucas(#[from] LucasError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("{0}")]
    Io(#[from] io::Error),
}

/// `trinomial`, `delannoy` or `quad:a=<int>,b=<int>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecExpression(pub QuadraticSpec);

impl FromStr for SpecExpression {
    type Err = CliError;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let err = |token: &str| CliError::Spec {
            raw: raw.to_string(),
            token: token.to_string(),
        };
        match raw {
            "trinomial" => return Ok(SpecExpression(QuadraticSpec::trinomial())),
            "delannoy" => return Ok(SpecExpression(QuadraticSpec::delannoy())),
            _ => {}
        }
        let body = raw.strip_prefix("quad:").ok_or_else(|| err(raw))?;
        let mut a = None;
        let mut b = None;
        for part in body.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(|| err(part))?;
            let slot = match key.trim() {
                "a" => &mut a,
                "b" => &mut b,
                _ => return Err(err(key)),
            };
            if slot.is_some() {
                return Err(err(key));
            }
            *slot = Some(value.trim().parse::<i64>().map_err(|_| err(value))?);
        }
        let a = a.ok_or_else(|| err("a"))?;
        let b = b.ok_or_else(|| err("b"))?;
        let spec = QuadraticSpec::new(a, b).map_err(|_| err("b=0"))?;
        Ok(SpecExpression(spec))
    }
}

/// Inclusive `lo..hi`.
pub fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Range(s.to_string());
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "trinom",
    version,
    about = "Central trinomial-type sequences modulo primes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residues R_0..R_{p-1} mod p, built by both routes.
    Table {
        #[arg(long, value_parser = parse_spec)]
        spec: SpecExpression,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Zero pattern of the first p residues and whether it is a palindrome.
    Pattern {
        #[arg(long, value_parser = parse_spec)]
        spec: SpecExpression,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Run the palindrome pipeline over every prime in a range.
    Verify {
        #[arg(long, value_parser = parse_spec)]
        spec: SpecExpression,
        /// Inclusive range lo..hi.
        #[arg(long)]
        primes: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// R_n mod p for a decimal n of any size.
    Eval {
        #[arg(long, value_parser = parse_spec)]
        spec: SpecExpression,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        n: String,
        #[command(flatten)]
        output: Output,
    },
    /// Exact terms R_0..R_{count-1}, one per line.
    Exact {
        #[arg(long, value_parser = parse_spec)]
        spec: SpecExpression,
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_spec(s: &str) -> Result<SpecExpression, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn odd_prime(p: u64) -> Result<Modulus, CliError> {
    let m = Modulus::new(p).map_err(|e| match e {
        ModError::NotPrime(p) => CliError::NotPrime(p),
        other => CliError::Mod(other),
    })?;
    if p == 2 {
        return Err(CliError::EvenPrime);
    }
    Ok(m)
}

/// Result of a command: text to emit plus an exit code and optional diagnostic.
struct Outcome {
    text: String,
    code: i32,
    diagnostic: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
            diagnostic: None,
        }
    }
}

fn cmd_table(spec: QuadraticSpec, prime: u64, format: Format) -> Result<Outcome, CliError> {
    let m = odd_prime(prime)?;
    let by_recurrence = table_via_recurrence(spec, m)?;
    let by_power = table_via_poly_pow(spec, m)?;
    let report = TableReport::new(&by_recurrence, &by_power);
    let text = match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    if report.tables_agree {
        Ok(Outcome::ok(text))
    } else {
        Ok(Outcome {
            text,
            code: EXIT_VIOLATION,
            diagnostic: Some(format!(
                "recurrence table and coefficients of P(x)^(({prime}-1)/2) disagree"
            )),
        })
    }
}

fn cmd_pattern(spec: QuadraticSpec, prime: u64) -> Result<Outcome, CliError> {
    let m = odd_prime(prime)?;
    let table = cached_table(spec, m, Provenance::Recurrence)?;
    let pattern = zero_pattern(&table);
    Ok(Outcome::ok(format!(
        "{} palindromic={}\n",
        pattern,
        is_palindrome(&pattern)
    )))
}

fn cmd_verify(
    spec: QuadraticSpec,
    range: &str,
    jobs: usize,
    format: Format,
) -> Result<Outcome, CliError> {
    let (lo, hi) = parse_range(range)?;
    let primes = primes_in_range(lo, hi);
    let records = verify_theorem(spec, &primes, jobs)?;
    let report = VerifyReport::new(&spec, &records);
    let text = match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    if report.violations.is_empty() {
        Ok(Outcome::ok(text))
    } else {
        let diagnostic = format!("violations at p = {}", report.violations.join(", "));
        Ok(Outcome {
            text,
            code: EXIT_VIOLATION,
            diagnostic: Some(diagnostic),
        })
    }
}

fn cmd_eval(spec: QuadraticSpec, prime: u64, n: &str) -> Result<Outcome, CliError> {
    let m = odd_prime(prime)?;
    let n = parse_decimal(n)?;
    let table = cached_table(spec, m, Provenance::Recurrence)?;
    let r = lucas_eval(&table, &n)?;
    Ok(Outcome::ok(format!("{}\n", r.value())))
}

fn cmd_exact(spec: QuadraticSpec, count: usize) -> Result<Outcome, CliError> {
    let seq = exact_terms(spec, count)?;
    let mut text = String::new();
    for t in &seq.terms {
        text.push_str(&t.to_string());
        text.push('\n');
    }
    Ok(Outcome::ok(text))
}

fn dispatch(command: &Command) -> Result<(Outcome, Option<&PathBuf>), CliError> {
    Ok(match command {
        Command::Table {
            spec,
            prime,
            format,
            output,
        } => (cmd_table(spec.0, *prime, *format)?, output.output.as_ref()),
        Command::Pattern {
            spec,
            prime,
            output,
        } => (cmd_pattern(spec.0, *prime)?, output.output.as_ref()),
        Command::Verify {
            spec,
            primes,
            jobs,
            format,
            output,
        } => (
            cmd_verify(spec.0, primes, *jobs, *format)?,
            output.output.as_ref(),
        ),
        Command::Eval {
            spec,
            prime,
            n,
            output,
        } => (cmd_eval(spec.0, *prime, n)?, output.output.as_ref()),
        Command::Exact {
            spec,
            count,
            output,
        } => (cmd_exact(spec.0, *count)?, output.output.as_ref()),
    })
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> io::Result<()> {
    match path {
        Some(p) if p.as_os_str() != "stdout" && p.as_os_str() != "-" => {
            File::create(p)?.write_all(text.as_bytes())
        }
        _ => out.write_all(text.as_bytes()),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
                return EXIT_OK;
            }
            let _ = err.write_all(rendered.as_bytes());
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli.command) {
        Ok((outcome, path)) => {
            if let Err(e) = emit(&outcome.text, path, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if let Some(d) = outcome.diagnostic {
                let _ = writeln!(err, "{d}");
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
