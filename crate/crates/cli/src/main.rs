//! `cantor` — expand, reconstruct, and analyze rationals in Cantor series
//! number systems.
//!
//! Output is plain text, one result per line, deterministic for a given
//! argv. Exit status 1 flags usage errors (the message names the offending
//! flag), 2 flags domain errors (digit out of range, non-periodic spec for
//! `period`, improper fractions, ...).

use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use cantor_series::{
    constant_shift_check, cylinder_interval, detect_period, digit_stream, eval_finite,
    eval_periodic, finiteness_horizon, grouping_ratios, parse_digits, parse_spec, render_digits,
    shift_n, unit_fraction_digits, BaseSequenceSpec, Error, Rational, UnitFractionOutcome,
};

#[derive(Parser)]
#[command(name = "cantor", version, about = "Exact Cantor series arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first N digits of x in base Q, with a trailing `...`
    /// when the expansion has not yet terminated at the cut
    Expand {
        /// Base sequence, e.g. odd, factorial, const:10, periodic:2,3
        #[arg(long)]
        spec: String,
        /// Rational input as P/R with 0 <= P < R
        #[arg(long)]
        x: String,
        /// Number of digits to print
        #[arg(long)]
        count: u64,
    },
    /// Drop the first N digits and rescale: print sigma^N(x)
    Shift {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: u64,
    },
    /// Evaluate a digit string (optionally with a repeating period) back
    /// to the exact rational it denotes
    Reconstruct {
        #[arg(long)]
        spec: String,
        /// Digits in the bracket rendering, e.g. 035229[11]4
        #[arg(long)]
        digits: String,
        /// Repeating block appended after the digits
        #[arg(long)]
        period: Option<String>,
    },
    /// Print the exact interval of the cylinder with the given base digits
    Cylinder {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        base: String,
    },
    /// Detect the eventual digit period of x under a periodic base sequence
    Period {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        x: String,
    },
    /// Smallest k with R dividing q_1...q_k, searched up to a bound
    Finite {
        #[arg(long)]
        r: String,
        #[arg(long)]
        spec: String,
        #[arg(long)]
        bound: u64,
    },
    /// Closed-form digits of 1/W when W divides every q_k - 1
    Unitfrac {
        #[arg(long)]
        w: String,
        #[arg(long)]
        spec: String,
        #[arg(long)]
        horizon: u64,
    },
    /// Check the constant-shift digit pattern on the window (n0, horizon]
    Constshift {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        n0: u64,
        #[arg(long)]
        horizon: u64,
    },
    /// Group digits into blocks at the given breakpoints and compare the
    /// block ratios
    Grouping {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        x: String,
        /// Comma-separated breakpoints, e.g. 0,1,2,3
        #[arg(long)]
        breaks: String,
        #[arg(long)]
        horizon: u64,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_syntax() {
            Self::Usage(e.to_string())
        } else {
            Self::Domain(e.to_string())
        }
    }
}

/// Attach the flag name to syntax errors so usage messages point at the
/// offending argument; domain errors pass through unchanged.
fn for_flag<T>(flag: &str, result: Result<T, Error>) -> Result<T, CliError> {
    result.map_err(|e| {
        if e.is_syntax() {
            CliError::Usage(format!("--{flag}: {e}"))
        } else {
            CliError::Domain(e.to_string())
        }
    })
}

fn parse_spec_flag(text: &str) -> Result<BaseSequenceSpec, CliError> {
    for_flag("spec", parse_spec(text))
}

fn parse_x_flag(text: &str) -> Result<Rational, CliError> {
    for_flag("x", Rational::from_str(text))
}

fn parse_digits_flag(flag: &str, text: &str) -> Result<Vec<BigInt>, CliError> {
    for_flag(flag, parse_digits(text))
}

fn parse_integer_flag(flag: &str, text: &str) -> Result<BigInt, CliError> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || digits.bytes().any(|b| !b.is_ascii_digit()) {
        return Err(CliError::Usage(format!(
            "--{flag}: {text:?} is not a decimal integer"
        )));
    }
    Ok(text.parse().expect("validated decimal integer"))
}

fn parse_positive_flag(flag: &str, text: &str) -> Result<BigInt, CliError> {
    let value = parse_integer_flag(flag, text)?;
    if value < BigInt::from(1) {
        return Err(CliError::Domain(format!(
            "--{flag} must be a positive integer, got {value}"
        )));
    }
    Ok(value)
}

fn parse_breaks_flag(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|piece| {
            piece.parse::<u64>().map_err(|_| {
                CliError::Usage(format!("--breaks: {piece:?} is not a non-negative integer"))
            })
        })
        .collect()
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Expand { spec, x, count } => {
            let spec = parse_spec_flag(&spec)?;
            let x = parse_x_flag(&x)?;
            let mut stream = digit_stream(&x, &spec)?;
            let digits: Vec<BigInt> = stream.by_ref().take(count as usize).collect();
            let marker = if stream.is_terminated() { "" } else { "..." };
            println!("{}{marker}", render_digits(&digits));
        }
        Command::Shift { spec, x, n } => {
            let spec = parse_spec_flag(&spec)?;
            let x = parse_x_flag(&x)?;
            println!("{}", shift_n(&x, &spec, n)?);
        }
        Command::Reconstruct {
            spec,
            digits,
            period,
        } => {
            let spec = parse_spec_flag(&spec)?;
            let digits = parse_digits_flag("digits", &digits)?;
            let value = match period {
                Some(period) => {
                    let period = parse_digits_flag("period", &period)?;
                    eval_periodic(&digits, &period, &spec)?
                }
                None => eval_finite(&digits, &spec)?,
            };
            println!("x={value}");
        }
        Command::Cylinder { spec, base } => {
            let spec = parse_spec_flag(&spec)?;
            let base = parse_digits_flag("base", &base)?;
            let cylinder = cylinder_interval(&base, &spec)?;
            println!("[{}, {}]", cylinder.left(), cylinder.right());
        }
        Command::Period { spec, x } => {
            let spec = parse_spec_flag(&spec)?;
            let x = parse_x_flag(&x)?;
            let report = detect_period(&x, &spec)?;
            println!(
                "preperiod={} period=({})",
                render_digits(&report.preperiod_digits),
                render_digits(&report.period_digits)
            );
            let value = eval_periodic(&report.preperiod_digits, &report.period_digits, &spec)?;
            println!("x={value}");
        }
        Command::Finite { r, spec, bound } => {
            let spec = parse_spec_flag(&spec)?;
            let r = parse_positive_flag("r", &r)?;
            match finiteness_horizon(&r, &spec, bound) {
                Some(k0) => println!("k0={k0}"),
                None => println!("absent"),
            }
        }
        Command::Unitfrac { w, spec, horizon } => {
            let spec = parse_spec_flag(&spec)?;
            let w = parse_positive_flag("w", &w)?;
            if horizon == 0 {
                return Err(CliError::Usage("--horizon must be at least 1".into()));
            }
            match unit_fraction_digits(&w, &spec, horizon) {
                UnitFractionOutcome::Expansion(exp) => {
                    println!("digits={}", render_digits(&exp.digits));
                    println!(
                        "certified={}",
                        if exp.certified_for_all_indices {
                            "all"
                        } else {
                            "horizon"
                        }
                    );
                }
                UnitFractionOutcome::NotDivisible { first_failing_index } => {
                    println!("absent at k={first_failing_index}");
                }
            }
        }
        Command::Constshift {
            spec,
            x,
            n0,
            horizon,
        } => {
            let spec = parse_spec_flag(&spec)?;
            let x = parse_x_flag(&x)?;
            if horizon <= n0 {
                return Err(CliError::Usage(
                    "--horizon must be greater than --n0".into(),
                ));
            }
            let report = constant_shift_check(&x, &spec, n0, horizon)?;
            let mut line = format!("holds={}", report.holds);
            if let Some(step) = report.first_violation {
                line.push_str(&format!(" violation_at={step}"));
            }
            line.push_str(&format!(
                " sigma_constant={} sigma={}",
                report.shift_constant, report.shift_value
            ));
            println!("{line}");
        }
        Command::Grouping {
            spec,
            x,
            breaks,
            horizon,
        } => {
            let spec = parse_spec_flag(&spec)?;
            let x = parse_x_flag(&x)?;
            let breaks = parse_breaks_flag(&breaks)?;
            let report = grouping_ratios(&x, &spec, &breaks, horizon)?;
            let ratios = report
                .ratios
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",");
            let mut line = format!("ratios={ratios} constant={}", report.constant);
            if let Some(common) = &report.common_ratio {
                line.push_str(&format!(" common_ratio={common}"));
            }
            println!("{line}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
