use std::io::Read;
use std::path::PathBuf;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::Rational;
use serde_json::{json, Value};
use waring_core::{
    classify, closure_ranks, decompose, numeric_fit, sample_degenerate, sample_generic_rank,
    verify_decomposition, waring_rank, BinaryForm, CaseTag, Error as CoreError,
};

use crate::output::*;
use crate::parse::parse_form;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_NONCONVERGENCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "waring", version, about = "Waring rank, classification and decomposition of binary forms")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Expected degree of the input; a mismatch is an error. Also the degree for `closure`.
    #[arg(long, global = true, value_name = "D")]
    pub degree: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Form as an expression in x and y, e.g. "x^3 - 3*x*y^2".
    #[arg(allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// Read the form from a JSON file ({"degree", "coefficients"}); `-` for stdin.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact Waring rank with its apolar certificate.
    Rank(Input),
    /// Rank plus the stratum and the ranks in its closure.
    Classify(Input),
    /// Decomposition into powers of linear forms, verified at the given precision.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 256, value_name = "BITS")]
        precision: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-30)]
        tol: f64,
    },
    /// Ranks occurring in the closure of the rank-R stratum (degree from --degree).
    Closure {
        #[arg(long, value_name = "R")]
        rank: usize,
    },
    /// Draw a random form of known rank and certify it.
    #[command(group = clap::ArgGroup::new("kind").required(true))]
    Sample {
        #[arg(long, num_args = 2, value_names = ["D", "R"], group = "kind")]
        generic: Option<Vec<usize>>,
        #[arg(long, num_args = 2, value_names = ["D", "K"], group = "kind")]
        degenerate: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Numeric least-squares fit with R terms.
    Fit {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "R")]
        r: usize,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run one command per input line and print one JSON result per line, in
    /// input order. A line is a JSON array of arguments such as
    /// ["rank", "x^2*y"] or a {"degree", "coefficients"} object, which is ranked.
    Batch {
        /// Input file; `-` for stdin.
        file: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::InvalidInput(_)
            | CoreError::ZeroForm
            | CoreError::OutOfRange { .. }
            | CoreError::Precondition(_) => EXIT_INVALID,
            CoreError::NumericFailure(_) | CoreError::SamplingFailure { .. } => EXIT_NONCONVERGENCE,
            CoreError::BadPrime(_) | CoreError::InternalInvariant(_) | CoreError::Inconsistent(_) => {
                EXIT_VERIFY
            }
        };
        CliError::new(code, e.to_string())
    }
}

/// A finished command: the result object, its text rendering, and the exit code
/// (nonzero when a result was produced but failed verification).
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, code: EXIT_OK }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the tool on a full argument list (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    if let Command::Batch { file } = &cli.command {
        return match read_source(file) {
            Ok(src) => {
                let (code, stdout) = run_batch(&src);
                Outcome {
                    code,
                    stdout,
                    stderr: String::new(),
                }
            }
            Err(e) => error_outcome(e),
        };
    }
    match execute(&cli) {
        Ok(report) => {
            let mut stdout = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable"),
                Format::Text => report.text,
            };
            stdout.push('\n');
            Outcome {
                code: report.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => error_outcome(e),
    }
}

fn error_outcome(e: CliError) -> Outcome {
    Outcome {
        code: e.code,
        stdout: String::new(),
        stderr: format!("error: {}\n", e.message),
    }
}

fn read_source(path: &PathBuf) -> Result<String, CliError> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::new(EXIT_INVALID, format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path)
            .map_err(|e| CliError::new(EXIT_INVALID, format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

/// Reads a form from the `{"degree", "coefficients"}` schema. Coefficients may be
/// `"p/q"` strings or JSON integers; other fields are ignored.
pub fn form_from_json(v: &Value) -> Result<BinaryForm, CliError> {
    let invalid = |m: &str| CliError::new(EXIT_INVALID, m.to_string());
    let d = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| invalid("\"degree\" must be a nonnegative integer"))? as usize;
    let coeffs = v
        .get("coefficients")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("\"coefficients\" must be an array"))?;
    if coeffs.len() != d + 1 {
        return Err(invalid(&format!(
            "expected {} coefficients for degree {d}, got {}",
            d + 1,
            coeffs.len()
        )));
    }
    let coeffs = coeffs
        .iter()
        .map(|c| match c {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n.as_i64().map(Rational::from),
            _ => None,
        }
        .ok_or_else(|| invalid(&format!("bad coefficient {c}"))))
        .collect::<Result<Vec<_>, _>>()?;
    BinaryForm::new(d, coeffs).map_err(CliError::from)
}

fn load_form(input: &Input, degree: Option<usize>) -> Result<BinaryForm, CliError> {
    let q = match (&input.expr, &input.json) {
        (Some(e), _) => {
            parse_form(e).map_err(|err| {
                let code = match err {
                    crate::parse::ParseError::NotHomogeneous { .. } => EXIT_INVALID,
                    _ => EXIT_USAGE,
                };
                CliError::new(code, err.to_string())
            })?
        }
        (None, Some(path)) => {
            let src = read_source(path)?;
            let v: Value = serde_json::from_str(&src)
                .map_err(|e| CliError::new(EXIT_USAGE, format!("invalid JSON: {e}")))?;
            form_from_json(&v)?
        }
        (None, None) => return Err(CliError::new(EXIT_USAGE, "no input form")),
    };
    check_degree(q.degree(), degree)?;
    Ok(q)
}

fn check_degree(found: usize, expected: Option<usize>) -> Result<(), CliError> {
    match expected {
        Some(d) if d != found => Err(CliError::new(
            EXIT_INVALID,
            format!("degree mismatch: expected {d}, input has degree {found}"),
        )),
        _ => Ok(()),
    }
}

/// Runs a parsed non-batch command.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Rank(input) => {
            let q = load_form(input, cli.degree)?;
            let r = waring_rank(&q)?;
            Ok(Report::ok(rank_json(&q, &r), rank_text(&r)))
        }
        Command::Classify(input) => {
            let q = load_form(input, cli.degree)?;
            let c = classify(&q)?;
            let (d, r) = c.stratum();
            let mut v = rank_json(&q, &c.result);
            let obj = v.as_object_mut().expect("object");
            obj.insert("stratum".into(), json!({ "degree": d, "rank": r }));
            obj.insert("stratum_label".into(), json!(c.stratum_label()));
            obj.insert("closure_ranks".into(), json!(c.closure_ranks));
            let text = format!(
                "{}\nstratum {}; closure ranks {}",
                rank_text(&c.result),
                c.stratum_label(),
                set_text(&c.closure_ranks)
            );
            Ok(Report::ok(v, text))
        }
        Command::Decompose {
            input,
            precision,
            seed,
            tol,
        } => run_decompose(&load_form(input, cli.degree)?, *precision, *seed, *tol),
        Command::Closure { rank } => {
            let d = cli
                .degree
                .ok_or_else(|| CliError::new(EXIT_USAGE, "closure requires --degree"))?;
            let set = closure_ranks(d, *rank)?;
            Ok(Report::ok(
                json!({ "degree": d, "rank": rank, "ranks": set }),
                set_text(&set),
            ))
        }
        Command::Sample {
            generic,
            degenerate,
            seed,
        } => run_sample(generic.as_deref(), degenerate.as_deref(), *seed, cli.degree),
        Command::Fit {
            input,
            r,
            restarts,
            seed,
        } => run_fit(&load_form(input, cli.degree)?, *r, *restarts, *seed),
        Command::Batch { .. } => Err(CliError::new(EXIT_USAGE, "batch cannot be nested")),
    }
}

fn run_decompose(q: &BinaryForm, precision: u32, seed: u64, tol: f64) -> Result<Report, CliError> {
    if precision < 16 {
        return Err(CliError::new(EXIT_INVALID, "precision must be at least 16 bits"));
    }
    let dec = decompose(q, precision, seed)?;
    let report = verify_decomposition(q, &dec, tol);
    let digits = decimal_digits(precision);
    let terms: Vec<Value> = dec
        .terms
        .iter()
        .map(|(w, p)| json!({ "weight": complex_json(w, digits), "point": point_json(p, digits) }))
        .collect();
    let mut v = form_json(q);
    let obj = v.as_object_mut().expect("object");
    obj.insert("rank".into(), json!(dec.rank));
    obj.insert("case".into(), json!(dec.case.as_str()));
    obj.insert("method".into(), json!(dec.method.as_str()));
    obj.insert("precision_bits".into(), json!(dec.precision_bits));
    obj.insert("terms".into(), Value::Array(terms));
    obj.insert("witness".into(), dec.witness.as_ref().map_or(Value::Null, form_json));
    obj.insert("residual".into(), json!(dec.residual.to_f64()));
    obj.insert(
        "verification".into(),
        json!({
            "max_relative_error": report.max_relative_error.to_f64(),
            "tolerance": tol,
            "min_separation": report.min_separation.as_ref().map(|s| s.to_f64()),
            "separation_bound": report.separation_bound.to_f64(),
            "passed": report.passed(),
        }),
    );

    let short = 12;
    let mut text = format!(
        "rank = {} ({}; {}; {} bits)",
        dec.rank,
        dec.case.as_str(),
        dec.method.as_str(),
        precision
    );
    if let Some(w) = &dec.witness {
        text.push_str(&format!("\nwitness f = {w}"));
    }
    for (w, p) in &dec.terms {
        text.push_str(&format!(
            "\n  ({}) * (({})*x + ({})*y)^{}",
            complex_text(w, short),
            complex_text(p.t(), short),
            complex_text(p.u(), short),
            dec.degree
        ));
    }
    text.push_str(&format!(
        "\nresidual = {:e} ({}, tol {tol:e})",
        report.max_relative_error.to_f64(),
        if report.passed() { "verified" } else { "verification FAILED" }
    ));
    let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY };
    Ok(Report { json: v, text, code })
}

fn run_sample(
    generic: Option<&[usize]>,
    degenerate: Option<&[usize]>,
    seed: u64,
    degree: Option<usize>,
) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (kind, d, param, q) = match (generic, degenerate) {
        (Some(&[d, r]), _) => ("generic", d, r, sample_generic_rank(d, r, &mut rng)?),
        (_, Some(&[d, k])) => ("degenerate", d, k, sample_degenerate(d, k, &mut rng)?),
        _ => return Err(CliError::new(EXIT_USAGE, "expected --generic D R or --degenerate D K")),
    };
    check_degree(d, degree)?;
    let r = waring_rank(&q)?;
    let certified = match kind {
        "generic" => {
            r.rank == param
                && (matches!(r.case, CaseTag::Generic | CaseTag::Power | CaseTag::Middle))
        }
        _ => r.rank == d - param + 1 && r.border_rank == param + 1,
    };
    let (param_name, expected) = if kind == "generic" {
        ("rank", param)
    } else {
        ("k", param)
    };
    let v = json!({
        "kind": kind,
        "degree": d,
        param_name: expected,
        "seed": seed,
        "form": form_json(&q),
        "certificate": rank_json(&q, &r),
        "certified": certified,
    });
    let text = format!(
        "{q}\n{}{}",
        rank_text(&r),
        if certified { "" } else { "\ncertificate FAILED" }
    );
    let code = if certified { EXIT_OK } else { EXIT_VERIFY };
    Ok(Report { json: v, text, code })
}

fn run_fit(q: &BinaryForm, r: usize, restarts: usize, seed: u64) -> Result<Report, CliError> {
    if q.is_zero() {
        return Err(CoreError::ZeroForm.into());
    }
    if r == 0 || restarts == 0 {
        return Err(CliError::new(EXIT_INVALID, "--r and --restarts must be positive"));
    }
    let fit = numeric_fit(q, r, restarts, seed);
    if !fit.best_residual.is_finite() {
        return Err(CliError::new(EXIT_NONCONVERGENCE, "numeric fit diverged"));
    }
    let mut v = form_json(q);
    let obj = v.as_object_mut().expect("object");
    obj.insert("r".into(), json!(fit.r));
    obj.insert("best_residual".into(), json!(fit.best_residual));
    obj.insert("restarts_used".into(), json!(fit.restarts_used));
    obj.insert("gradient_check".into(), json!(fit.gradient_check));
    obj.insert("precision_bits".into(), json!(53));
    obj.insert(
        "parameters".into(),
        Value::Array(fit.parameters.iter().map(|z| f64_complex_json(z.re, z.im)).collect()),
    );
    let text = format!(
        "r = {}: best residual {:e} over {} restarts (gradient check {:e})",
        fit.r, fit.best_residual, fit.restarts_used, fit.gradient_check
    );
    Ok(Report::ok(v, text))
}

fn batch_record(line: &str) -> Result<Report, CliError> {
    let v: Value = serde_json::from_str(line)
        .map_err(|e| CliError::new(EXIT_USAGE, format!("invalid JSON record: {e}")))?;
    match v {
        Value::Array(items) => {
            let mut args = vec!["waring".to_string()];
            for it in items {
                match it {
                    Value::String(s) => args.push(s),
                    other => args.push(other.to_string()),
                }
            }
            let cli = Cli::try_parse_from(&args)
                .map_err(|e| CliError::new(EXIT_USAGE, e.render().to_string().trim_end().to_string()))?;
            execute(&cli)
        }
        Value::Object(_) => {
            let q = form_from_json(&v)?;
            let r = waring_rank(&q)?;
            Ok(Report::ok(rank_json(&q, &r), rank_text(&r)))
        }
        _ => Err(CliError::new(EXIT_USAGE, "record must be an argument array or a form object")),
    }
}

/// Processes the records of a batch in parallel. Output lines follow input order;
/// the exit code is the largest code of any record.
pub fn run_batch(src: &str) -> (i32, String) {
    let lines: Vec<&str> = src
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<(i32, Value)> = lines
        .par_iter()
        .map(|line| match batch_record(line) {
            Ok(r) => (r.code, r.json),
            Err(e) => (e.code, json!({ "error": e.message, "exit_code": e.code })),
        })
        .collect();
    let mut out = String::new();
    let mut code = EXIT_OK;
    for (c, v) in results {
        code = code.max(c);
        out.push_str(&serde_json::to_string(&v).expect("serializable"));
        out.push('\n');
    }
    (code, out)
}
