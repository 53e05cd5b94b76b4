//! Command-line front end.
//!
//! Every invocation prints exactly one JSON envelope on stdout (or, for the
//! tabular commands in CSV mode, a header plus one row per `n`). Diagnostics
//! go to stderr. Exit codes: 0 ok, 1 verification failure, 2 usage or
//! parameter error, 3 internal invariant breach.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::divisor::{fine1_sequence, fine2_sequence};
use crate::error::Error;
use crate::params::{check_range, FineParams, Level};
use crate::quad_form::representations;
use crate::series::formal_product;
use crate::verify::{self, classify, IdentityId, Status};

pub const SCHEMA_VERSION: &str = "1";
/// Environment variable holding the default output format (`json` or `csv`).
pub const FORMAT_ENV: &str = "FINE_ARITH_FORMAT";
pub const MAX_N: usize = 1_000_000;
/// The two-variable check is cubic in its order.
pub const MAX_ANDREWS_ORDER: usize = 200;
pub const MAX_SWEEP_P: u32 = 64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fine-arith", version, about = "Fine product expansions, divisor excess functions and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SeqIdentity {
    Fine1,
    Fine2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum VerifyIdentity {
    Fine1,
    Fine2,
    Thm1,
    Thm2,
    Cor1,
    Cor2,
    Andrews,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients of the Fine product, or of q^r times its square.
    Expand {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: u32,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long)]
        squared: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// The divisor-side sequence for the single or squared product.
    DivisorSeq {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: u32,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum)]
        identity: SeqIdentity,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// All cone representations of n with their signs.
    Represent {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u64,
    },
    /// Per-n comparison of the two divisor classes.
    Classify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: u32,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check one identity over 0..=n-max.
    Verify {
        #[arg(long, value_enum)]
        identity: VerifyIdentity,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long = "n-max")]
        n_max: usize,
        /// z half-width for the two-variable check (default 2*n-max + 2).
        #[arg(long = "z-width")]
        z_width: Option<usize>,
    },
    /// Every identity over every valid (p, r) with p <= p-max.
    Sweep {
        #[arg(long = "p-max")]
        p_max: u32,
        #[arg(long = "n-max")]
        n_max: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Expand { .. } => "expand",
            Command::DivisorSeq { .. } => "divisor-seq",
            Command::Represent { .. } => "represent",
            Command::Classify { .. } => "classify",
            Command::Verify { .. } => "verify",
            Command::Sweep { .. } => "sweep",
        }
    }

    fn echo(&self) -> Value {
        match self {
            Command::Expand { p, r, n_max, squared, .. } => {
                json!({ "p": p, "r": r, "n_max": n_max, "squared": squared })
            }
            Command::DivisorSeq { p, r, n_max, identity, .. } => {
                json!({ "p": p, "r": r, "n_max": n_max, "identity": identity })
            }
            Command::Represent { p, r, n } => json!({ "p": p, "r": r, "n": n }),
            Command::Classify { p, r, n_max, .. } => json!({ "p": p, "r": r, "n_max": n_max }),
            Command::Verify { identity, p, r, n_max, z_width } => {
                json!({ "identity": identity, "p": p, "r": r, "n_max": n_max, "z_width": z_width })
            }
            Command::Sweep { p_max, n_max } => json!({ "p_max": p_max, "n_max": n_max }),
        }
    }
}

#[derive(Debug, Serialize)]
struct Envelope<'a> {
    schema_version: &'static str,
    command: &'a str,
    params: Value,
    data: Value,
    status: &'static str,
}

enum Output {
    Json { data: Value, status: Status },
    Csv { header: &'static str, rows: Vec<String> },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

fn json_data<T: Serialize>(value: &T) -> Result<Value, Failure> {
    serde_json::to_value(value).map_err(|e| Failure::Internal(e.to_string()))
}

/// Runs with the process's stdout and stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `argv` (program name first), executes, writes the envelope to
/// `out`, and returns the exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            emit_error(out, "", Value::Null, &e.kind().to_string());
            return EXIT_USAGE;
        }
    };
    let command = cli.command;
    let name = command.name();
    let params = command.echo();

    let default_format = match std::env::var(FORMAT_ENV) {
        Ok(v) => match Format::from_str(&v, true) {
            Ok(f) => f,
            Err(_) => {
                let msg = format!("{FORMAT_ENV}={v:?} is not one of json, csv");
                let _ = writeln!(err, "error: {msg}");
                emit_error(out, name, params, &msg);
                return EXIT_USAGE;
            }
        },
        Err(_) => Format::Json,
    };

    match execute(&command, default_format) {
        Ok(Output::Json { data, status }) => {
            let (label, code) = match status {
                Status::Pass => ("ok", EXIT_OK),
                Status::Fail => ("fail", EXIT_FAIL),
            };
            let envelope = Envelope { schema_version: SCHEMA_VERSION, command: name, params, data, status: label };
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&envelope).expect("serializable"));
            if code == EXIT_FAIL {
                let _ = writeln!(err, "verification found a counterexample");
            }
            code
        }
        Ok(Output::Csv { header, rows }) => {
            let _ = writeln!(out, "{header}");
            for row in rows {
                let _ = writeln!(out, "{row}");
            }
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            emit_error(out, name, params, &msg);
            EXIT_USAGE
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            emit_error(out, name, params, &msg);
            EXIT_INTERNAL
        }
    }
}

fn emit_error(out: &mut dyn Write, command: &str, params: Value, message: &str) {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        params,
        data: json!({ "message": message }),
        status: "error",
    };
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&envelope).expect("serializable"));
}

fn check_n_max(n_max: usize) -> Result<(), Failure> {
    if n_max > MAX_N {
        return Err(Failure::Usage(format!("--n-max {n_max} exceeds the limit {MAX_N}")));
    }
    Ok(())
}

fn sequence_output(coeffs: Vec<i64>, format: Format) -> Output {
    match format {
        Format::Json => Output::Json { data: json!(coeffs), status: Status::Pass },
        Format::Csv => Output::Csv {
            header: "n,coefficient",
            rows: coeffs.iter().enumerate().map(|(n, c)| format!("{n},{c}")).collect(),
        },
    }
}

fn execute(command: &Command, default_format: Format) -> Result<Output, Failure> {
    match *command {
        Command::Expand { p, r, n_max, squared, format } => {
            check_n_max(n_max)?;
            let product = formal_product(p, r, n_max)?;
            let series = if squared { product.square()?.shift(r as usize)? } else { product };
            Ok(sequence_output(series.into_coeffs(), format.unwrap_or(default_format)))
        }
        Command::DivisorSeq { p, r, n_max, identity, format } => {
            check_n_max(n_max)?;
            let params = FineParams::new(p, r)?;
            let coeffs = match identity {
                SeqIdentity::Fine1 => fine1_sequence(&params, n_max)?,
                SeqIdentity::Fine2 => fine2_sequence(&params, n_max)?,
            };
            Ok(sequence_output(coeffs, format.unwrap_or(default_format)))
        }
        Command::Represent { p, r, n } => {
            check_n_max(n as usize)?;
            check_range(p, r)?;
            let params = FineParams::new(p, r)?;
            let reps = representations(&params, n);
            let even = reps.iter().filter(|x| x.sign > 0).count();
            let odd = reps.len() - even;
            Ok(Output::Json {
                data: json!({
                    "representations": reps,
                    "even": even,
                    "odd": odd,
                    "signed_count": even as i64 - odd as i64,
                }),
                status: Status::Pass,
            })
        }
        Command::Classify { p, r, n_max, format } => {
            check_n_max(n_max)?;
            let params = FineParams::new(p, r)?.require(Level::Strong)?;
            let rows = (0..=n_max as u64)
                .map(|n| classify(&params, n))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(match format.unwrap_or(default_format) {
                Format::Json => Output::Json { data: json_data(&rows)?, status: Status::Pass },
                Format::Csv => Output::Csv {
                    header: "n,even,odd,excess,verdict",
                    rows: rows
                        .iter()
                        .map(|c| {
                            let verdict = serde_json::to_value(c.verdict).expect("serializable");
                            format!(
                                "{},{},{},{},{}",
                                c.n,
                                c.parity.even,
                                c.parity.odd,
                                c.excess_value,
                                verdict.as_str().unwrap_or_default()
                            )
                        })
                        .collect(),
                },
            })
        }
        Command::Verify { identity, p, r, n_max, z_width } => {
            check_n_max(n_max)?;
            let report = if identity == VerifyIdentity::Andrews {
                if p.is_some() || r.is_some() {
                    return Err(Failure::Usage("andrews takes no --p/--r".into()));
                }
                if n_max > MAX_ANDREWS_ORDER {
                    return Err(Failure::Usage(format!(
                        "--n-max {n_max} exceeds the andrews limit {MAX_ANDREWS_ORDER}"
                    )));
                }
                verify::verify_andrews(n_max, z_width.unwrap_or(2 * n_max + 2))?
            } else {
                let (Some(p), Some(r)) = (p, r) else {
                    return Err(Failure::Usage(format!(
                        "--identity {} needs --p and --r",
                        identity_id(identity).as_str()
                    )));
                };
                if z_width.is_some() {
                    return Err(Failure::Usage("--z-width applies only to andrews".into()));
                }
                let params = FineParams::new(p, r)?;
                verify::verify_one(identity_id(identity), &params, n_max)?
            };
            Ok(Output::Json { data: json_data(&report)?, status: report.status })
        }
        Command::Sweep { p_max, n_max } => {
            check_n_max(n_max)?;
            if !(2..=MAX_SWEEP_P).contains(&p_max) {
                return Err(Failure::Usage(format!("--p-max must be in 2..={MAX_SWEEP_P}")));
            }
            let report = verify::sweep(p_max, n_max)?;
            Ok(Output::Json { data: json_data(&report)?, status: report.status })
        }
    }
}

fn identity_id(v: VerifyIdentity) -> IdentityId {
    match v {
        VerifyIdentity::Fine1 => IdentityId::Fine1,
        VerifyIdentity::Fine2 => IdentityId::Fine2,
        VerifyIdentity::Thm1 => IdentityId::Thm1,
        VerifyIdentity::Thm2 => IdentityId::Thm2,
        VerifyIdentity::Cor1 => IdentityId::Cor1,
        VerifyIdentity::Cor2 => IdentityId::Cor2,
        VerifyIdentity::Andrews => IdentityId::Andrews,
    }
}
