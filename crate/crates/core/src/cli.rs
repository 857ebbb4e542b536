//! Command-line front end. [`run`] takes the argument list and returns the
//! exit code together with everything destined for stdout and stderr, so the
//! binary stays a thin shim and the behaviour is testable in-process.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::charpoly::{char_poly_factored, det_delta_exact};
use crate::error::Error;
use crate::extremal::{
    scan_energy, scan_energy_h, scan_radius, verify_chain_monotone, write_csv, ScanReport,
};
use crate::oracle::{sweep_with_tol, EIGENVALUE_TOL};
use crate::partitions::Partition;
use crate::spectrum::{energy, full_spectrum, inertia, spectral_radius};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

/// Significant digits for floats in JSON and CSV output.
pub const FLOAT_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "sqdist",
    version,
    about = "Spectra, inertia, energy and spectral radius of squared distance matrices of complete multipartite graphs"
)]
struct Cli {
    #[command(flatten)]
    format: Format,

    /// Eigenvalue tolerance for `verify`.
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Format {
    /// JSON output (default).
    #[arg(long, global = true)]
    json: bool,
    /// CSV output.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact eigenvalues with multiplicities plus isolated simple roots.
    Spectrum { partition: String },
    /// Counts of positive, zero and negative eigenvalues.
    Inertia { partition: String },
    /// Sum of absolute eigenvalues.
    Energy { partition: String },
    /// Largest eigenvalue.
    Radius { partition: String },
    /// Factored and expanded characteristic polynomial.
    Charpoly { partition: String },
    /// Energy over all partitions of N into T parts.
    ScanEnergy { n: usize, t: usize },
    /// Spectral radius over all partitions of N into T parts.
    ScanRadius { n: usize, t: usize },
    /// Energy over partitions of N into T parts with exactly H singletons.
    ScanH {
        n: usize,
        t: usize,
        #[arg(long)]
        h: usize,
    },
    /// Elementary majorization chain from FROM down to TO.
    Chain { from: String, to: String },
    /// Compare closed forms with the dense eigensolver for every n <= NMAX.
    Verify {
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
}

/// Exit code and captured output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Applies `SQDIST_THREADS` to the global rayon pool; 0 or unset leaves the
/// default.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SQDIST_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("SQDIST_THREADS={raw:?} is not a non-negative integer"))?;
    if n == 0 {
        return Ok(());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Rounds every float in `v` to [`FLOAT_DIGITS`] significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            if let Some(x) = num.as_f64().map(round_sig) {
                if let Some(n) = serde_json::Number::from_f64(x) {
                    *num = n;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", FLOAT_DIGITS - 1, x).parse().unwrap_or(x)
}

pub(crate) fn fmt_float(x: f64) -> String {
    round_sig(x).to_string()
}

fn to_json(value: &impl Serialize) -> String {
    let mut v = serde_json::to_value(value).expect("output serializes");
    round_floats(&mut v);
    serde_json::to_string(&v).expect("value serializes") + "\n"
}

fn parse_partition(s: &str) -> Result<Partition, Error> {
    s.parse()
}

enum Rendered {
    Done(String),
    Failed(String, String),
}

fn render(cli: &Cli) -> Result<Rendered, Error> {
    let csv = cli.format.csv;
    let done = Rendered::Done;
    Ok(match &cli.command {
        Command::Spectrum { partition } => {
            let spec = full_spectrum(&parse_partition(partition)?)?;
            if csv {
                let exact = spec.exact.iter().map(|e| {
                    vec![
                        e.value.to_string(),
                        e.multiplicity.to_string(),
                        "exact".into(),
                    ]
                });
                let isolated = spec
                    .isolated
                    .iter()
                    .map(|r| vec![fmt_float(r.value), "1".into(), "isolated".into()]);
                done(write_csv(
                    &["value", "multiplicity", "kind"],
                    exact.chain(isolated),
                ))
            } else {
                done(to_json(&spec))
            }
        }
        Command::Inertia { partition } => {
            let i = inertia(&parse_partition(partition)?);
            if csv {
                done(write_csv(
                    &["n_plus", "n_zero", "n_minus"],
                    [vec![
                        i.n_plus.to_string(),
                        i.n_zero.to_string(),
                        i.n_minus.to_string(),
                    ]],
                ))
            } else {
                done(to_json(&i))
            }
        }
        Command::Energy { partition } => {
            let e = energy(&parse_partition(partition)?)?;
            if csv {
                let theta = e.theta.map(|t| fmt_float(t.value)).unwrap_or_default();
                done(write_csv(
                    &["integer_part", "theta", "value"],
                    [vec![e.integer_part.to_string(), theta, fmt_float(e.value)]],
                ))
            } else {
                done(to_json(&e))
            }
        }
        Command::Radius { partition } => {
            let r = spectral_radius(&parse_partition(partition)?)?;
            if csv {
                done(write_csv(
                    &["value", "lo", "hi"],
                    [vec![fmt_float(r.value), fmt_float(r.lo), fmt_float(r.hi)]],
                ))
            } else {
                done(to_json(&r))
            }
        }
        Command::Charpoly { partition } => {
            let p = parse_partition(partition)?;
            let factored = char_poly_factored(&p);
            let expanded = factored.expand();
            if csv {
                let rows = expanded
                    .coeff_strings()
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| vec![i.to_string(), c]);
                done(write_csv(&["power", "coefficient"], rows))
            } else {
                done(to_json(&json!({
                    "factored": factored,
                    "expanded": expanded,
                    "display": expanded.to_string(),
                    "det": det_delta_exact(&p).to_string(),
                })))
            }
        }
        Command::ScanEnergy { n, t } => scan_output(scan_energy(*n, *t)?, csv),
        Command::ScanRadius { n, t } => scan_output(scan_radius(*n, *t)?, csv),
        Command::ScanH { n, t, h } => scan_output(scan_energy_h(*n, *t, *h)?, csv),
        Command::Chain { from, to } => {
            let report = verify_chain_monotone(&parse_partition(from)?, &parse_partition(to)?)?;
            let body = if csv {
                report.to_csv()
            } else {
                to_json(&report)
            };
            if report.passed() {
                done(body)
            } else {
                Rendered::Failed(body, report.violations.join("\n") + "\n")
            }
        }
        Command::Verify { nmax } => {
            let tol = cli.tol.unwrap_or(EIGENVALUE_TOL);
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::InfeasibleParameters(format!(
                    "--tol must be positive, got {tol}"
                )));
            }
            let summary = sweep_with_tol(*nmax, tol)?;
            let line = format!(
                "verified {} partitions with n <= {}: {} failures",
                summary.partitions, summary.n_max, summary.failures
            );
            let body = if csv {
                let rows = summary.records.iter().map(|r| {
                    vec![
                        r.partition.to_string(),
                        r.passed.to_string(),
                        fmt_float(r.max_eigenvalue_deviation),
                        fmt_float(r.energy_deviation),
                        r.det_exact.clone(),
                    ]
                });
                write_csv(
                    &[
                        "partition",
                        "passed",
                        "eigenvalue_deviation",
                        "energy_deviation",
                        "det",
                    ],
                    rows,
                )
            } else {
                let failed: Vec<_> = summary.failed().collect();
                to_json(&json!({
                    "summary": line,
                    "sweep": summary,
                    "failed": failed,
                }))
            };
            if summary.failures == 0 {
                Rendered::Done(body)
            } else {
                Rendered::Failed(body, line + "\n")
            }
        }
    })
}

fn scan_output(report: ScanReport, csv: bool) -> Rendered {
    let body = if csv {
        report.to_csv()
    } else {
        to_json(&report)
    };
    if report.passed() {
        Rendered::Done(body)
    } else {
        Rendered::Failed(body, report.violations.join("\n") + "\n")
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match render(&cli) {
        Ok(Rendered::Done(stdout)) => Outcome::ok(stdout),
        Ok(Rendered::Failed(stdout, stderr)) => Outcome {
            code: EXIT_VERIFY,
            stdout,
            stderr,
        },
        Err(e) => Outcome {
            code: EXIT_DOMAIN,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
