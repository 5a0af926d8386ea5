//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use qlag_core::involution::phi;
use qlag_core::laguerre::{
    laguerre_combinatorial, laguerre_recurrence, linearize_functional, moment_matching,
    moment_motzkin, moment_permutation,
};
use qlag_core::marked::{derangement_gf, enumerate_derangements, signed_sum, Composition};
use qlag_core::{Error, Limits, Poly3};
use serde::Serialize;

use crate::formats::{
    marked_from_str, poly_to_json, DerangementJson, DerangementsJson, FormatError, MarkedJson,
    PhiJson, StatsJson, TraceJson,
};
use crate::verify::{run_suite, Suite};

/// Environment variable that replaces every default size limit.
pub const MAX_N_VAR: &str = "QLAG_MAX_N";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qlag", version, about = "Exact q-Laguerre combinatorics")]
struct Args {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The polynomial L_n(x; q, y).
    Laguerre {
        n: usize,
        #[arg(long, value_enum, default_value_t = LaguerreMethod::Recurrence)]
        method: LaguerreMethod,
    },
    /// The moment mu_n.
    Moment {
        n: usize,
        #[arg(long, value_enum, default_value_t = MomentMethod::Motzkin)]
        method: MomentMethod,
    },
    /// The linearization coefficient of a comma-separated composition.
    Linearize {
        composition: Composition,
        #[arg(long, value_enum, default_value_t = LinearizeMethod::Functional)]
        method: LinearizeMethod,
    },
    /// Lists the derangements of a composition with wex and CR.
    Derangements { composition: Composition },
    /// Applies the involution once to a marked perfect matching read from a
    /// JSON file, or from stdin when the path is `-`.
    Phi { input: String },
    /// Runs an exhaustive verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LaguerreMethod {
    Recurrence,
    Combinatorial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MomentMethod {
    Permutation,
    Matching,
    Motzkin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LinearizeMethod {
    Functional,
    SignedSum,
    Derangement,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("verification failed")]
    Verification,
    #[error("output closed")]
    OutputClosed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Overflow
            | Error::LimitExceeded { .. }
            | Error::TableTooShort { .. }
            | Error::NegativeExponent(_)
            | Error::Inconsistent(_) => Failure::Compute(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Core(e) => e.into(),
            FormatError::Json(e) => Failure::Usage(format!("malformed JSON: {e}")),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::OutputClosed;
        }
        Failure::Compute(format!("output error: {e}"))
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = limits_from_env().and_then(|limits| dispatch(&args, limits, out));
    match result {
        Ok(()) | Err(Failure::OutputClosed) => EXIT_OK,
        Err(Failure::Verification) => EXIT_FAILURE,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn limits_from_env() -> Result<Limits, Failure> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Limits::uniform)
            .map_err(|_| Failure::Usage(format!("{MAX_N_VAR} must be a nonnegative integer, got `{v}`"))),
        Err(std::env::VarError::NotPresent) => Ok(Limits::default()),
        Err(e) => Err(Failure::Usage(format!("{MAX_N_VAR}: {e}"))),
    }
}

fn dispatch(args: &Args, limits: Limits, out: &mut dyn Write) -> Result<(), Failure> {
    let format = args.format;
    match &args.command {
        Command::Laguerre { n, method } => {
            let p = match method {
                LaguerreMethod::Recurrence => laguerre_recurrence(*n, &limits)?,
                LaguerreMethod::Combinatorial => laguerre_combinatorial(*n, &limits)?,
            };
            print_poly(&p, format, out)
        }
        Command::Moment { n, method } => {
            let p = match method {
                MomentMethod::Permutation => moment_permutation(*n, &limits)?,
                MomentMethod::Matching => moment_matching(*n, &limits)?,
                MomentMethod::Motzkin => moment_motzkin(*n, &limits)?,
            };
            print_poly(&p, format, out)
        }
        Command::Linearize { composition, method } => {
            let p = match method {
                LinearizeMethod::Functional => linearize_functional(composition.parts(), &limits)?,
                LinearizeMethod::SignedSum => signed_sum(composition, &limits)?,
                LinearizeMethod::Derangement => derangement_gf(composition, &limits)?,
            };
            print_poly(&p, format, out)
        }
        Command::Derangements { composition } => {
            let list: Vec<DerangementJson> = enumerate_derangements(composition, &limits)?
                .map(|p| DerangementJson::from(&p))
                .collect();
            match format {
                Format::Json => print_json(
                    &DerangementsJson {
                        composition: composition.parts().to_vec(),
                        count: list.len(),
                        derangements: list,
                    },
                    out,
                ),
                Format::Text => {
                    for d in &list {
                        let images: Vec<String> = d.permutation.iter().map(|v| v.to_string()).collect();
                        writeln!(out, "{}  wex={} cr={}", images.join(" "), d.wex, d.cr)?;
                    }
                    writeln!(out, "count {}", list.len())?;
                    Ok(())
                }
            }
        }
        Command::Phi { input } => {
            let text = read_input(input)?;
            let m = marked_from_str(&text)?;
            let (image, trace) = phi(&m)?;
            let report = PhiJson {
                input: MarkedJson::from(&m),
                input_stats: StatsJson::of(&m),
                result: MarkedJson::from(&image),
                result_stats: StatsJson::of(&image),
                trace: TraceJson::from(&trace),
            };
            match format {
                Format::Json => print_json(&report, out),
                Format::Text => print_phi_text(&report, out),
            }
        }
        Command::Verify { suite, max_n } => {
            let max_n = max_n.unwrap_or_else(|| suite.default_max_n());
            let report = run_suite(*suite, max_n, limits)?;
            match format {
                Format::Json => print_json(&report, out)?,
                Format::Text => {
                    let verdict = if report.pass { "PASS" } else { "FAIL" };
                    writeln!(
                        out,
                        "{} n={}..={}: {verdict} ({:.3} s)",
                        report.suite, report.min_n, report.max_n, report.wall_time_secs
                    )?;
                    if let Some(cx) = &report.counterexample {
                        writeln!(out, "counterexample: {cx}")?;
                    }
                }
            }
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Usage(format!("cannot read `{path}`: {e}")))?;
    Ok(text)
}

fn print_poly(p: &Poly3, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Text => writeln!(out, "{p}")?,
        Format::Json => print_json(&poly_to_json(p), out)?,
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Compute(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn print_phi_text(r: &PhiJson, out: &mut dyn Write) -> Result<(), Failure> {
    let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    writeln!(out, "case {}", r.trace.case)?;
    writeln!(out, "chosen i {}", opt(r.trace.chosen_i))?;
    writeln!(out, "chosen i' {}", opt(r.trace.chosen_i_prime))?;
    match r.trace.toggled_edge {
        Some(i) => writeln!(out, "toggled e{i} = ({i},{})", r.input.edges[i - 1][1])?,
        None => writeln!(out, "toggled -")?,
    }
    for (label, stats) in [("input", &r.input_stats), ("result", &r.result_stats)] {
        writeln!(
            out,
            "{label} e={} bwex={} cross={} wt={} bdiffs={:?}",
            stats.e, stats.bwex, stats.cross, stats.wt, stats.bdiffs
        )?;
    }
    let result = serde_json::to_string(&r.result).map_err(|e| Failure::Compute(e.to_string()))?;
    writeln!(out, "result {result}")?;
    Ok(())
}
