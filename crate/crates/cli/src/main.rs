//! `koornwinder construct` builds one polynomial and prints it as JSON;
//! `koornwinder verify` runs a verification suite and prints its report.
//!
//! Exit codes: 0 success, 1 failed verification or internal error,
//! 2 invalid input, 3 non-generic parameters.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use koornwinder::koornwinder::{build_interpolation, build_khat, koornwinder_oracle};
use koornwinder::scalar::parse_rational;
use koornwinder::verify::{run_suite, Suite, VerifyConfig};
use koornwinder::{Error, ParamPoint, Partition};

/// Parameters used when `--params` is omitted.
const DEFAULT_PARAMS: &str = r#"{"qh":"1/2","th":"1/3","t":["1/5","1/7","-1/4","2/9"]}"#;

#[derive(Parser)]
#[command(name = "koornwinder", version, about = "Koornwinder polynomials from difference and integral operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Khat,
    Oracle,
    Interpolation,
}

#[derive(Subcommand)]
enum Command {
    /// Build one polynomial and print it as canonical JSON.
    Construct {
        /// Comma-separated parts, e.g. "2,1"; empty for the empty partition.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Number of variables.
        #[arg(long)]
        n: usize,
        /// Parameter file, or inline JSON starting with '{'.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, value_enum, default_value = "khat")]
        method: MethodArg,
        /// Shift parameter of the interpolation polynomial, e.g. "1/3".
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
    },
    /// Run a verification suite and print its report.
    Verify {
        /// One of lemma22, triangularity, adjointness, gustafson, typeI,
        /// awtrans, actions, recurrences, closedforms, construction,
        /// mimachi, annihilation, interpolation, all.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Quadrature grid points per dimension (overrides the defaults).
        #[arg(long)]
        grid: Option<usize>,
        /// Relative tolerance of the numeric checks (overrides the defaults).
        #[arg(long)]
        tol: Option<f64>,
        /// Largest box as MxN: λ_1 <= M, at most N variables.
        #[arg(long)]
        max_box: Option<String>,
    },
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonGenericParameters(_) => 3,
            Error::InvalidParameter(_)
            | Error::InvalidShape(_)
            | Error::Parse(_)
            | Error::DimensionMismatch { .. }
            | Error::ContourViolation(_)
            | Error::InvalidPoint(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn load_params(arg: Option<&str>) -> Result<ParamPoint, Failure> {
    let text = match arg {
        None => DEFAULT_PARAMS.to_string(),
        Some(s) if s.trim_start().starts_with('{') => s.to_string(),
        Some(path) => fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?,
    };
    Ok(ParamPoint::from_json_str(&text)?)
}

fn parse_box(s: &str) -> Result<(u32, usize), Failure> {
    let bad = || usage(format!("--max-box expects MxN, got {s:?}"));
    let (m, n) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((m.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
}

fn construct(
    lambda: &str,
    n: usize,
    params: Option<&str>,
    method: MethodArg,
    s: Option<&str>,
) -> Result<String, Failure> {
    let lambda = Partition::parse(lambda)?;
    if lambda.len() > n {
        return Err(Error::InvalidShape(format!("{lambda} has more than {n} parts")).into());
    }
    let p = load_params(params)?;
    let value = match method {
        MethodArg::Khat => build_khat(&lambda, n, &p)?.to_json(),
        MethodArg::Oracle => koornwinder_oracle(&lambda, n, &p)?.to_json(),
        MethodArg::Interpolation => {
            let s = s.ok_or_else(|| usage("--s is required for the interpolation method"))?;
            let s = parse_rational(s)?;
            let poly = build_interpolation(&lambda, n, &p, &s)?;
            let mut v = serde_json::to_value(poly.to_json()).expect("plain data");
            let obj = v.as_object_mut().expect("object");
            obj.insert("lambda".into(), json!(lambda));
            obj.insert("method".into(), json!("interpolation"));
            obj.insert("s".into(), json!(s.to_string()));
            v
        }
    };
    Ok(serde_json::to_string(&value).expect("report serializes"))
}

fn verify(
    suite: &str,
    seed: u64,
    grid: Option<usize>,
    tol: Option<f64>,
    max_box: Option<&str>,
) -> Result<(String, bool), Failure> {
    let suite: Suite = suite.parse()?;
    if let Some(g) = grid {
        if g < 8 {
            return Err(usage(format!("--grid must be at least 8, got {g}")));
        }
    }
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(usage(format!("--tol must be positive, got {t}")));
        }
    }
    let max_box = max_box.map(parse_box).transpose()?;
    let cfg = VerifyConfig { seed, grid, tol, max_box };
    let report = run_suite(suite, &cfg);
    Ok((report.to_canonical_string(), report.passed()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct { lambda, n, params, method, s } => {
            construct(&lambda, n, params.as_deref(), method, s.as_deref()).map(|out| (out, true))
        }
        Command::Verify { suite, seed, grid, tol, max_box } => verify(&suite, seed, grid, tol, max_box.as_deref()),
    };
    match outcome {
        Ok((out, ok)) => {
            println!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
