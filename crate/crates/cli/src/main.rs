//! `pentropy`: JSON in, JSON out.
//!
//! Exit status 0 on success, 1 with `{"error": code, "detail": ...}` on any
//! input or precondition error, 2 when a verification suite fails.

mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use pentropy::decomposition::{decompose, extract_measure};
use pentropy::random::GENERATOR;
use pentropy::suites::run_suite;
use pentropy::transport_delta::CANONICAL_LAMBDA;
use pentropy::{delta_checked, Rat, SwapPair};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("cannot write output {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Lib(#[from] pentropy::Error),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io_error",
            CliError::Json { .. } => "malformed_json",
            CliError::Output { .. } => "output_error",
            CliError::Usage(_) => "usage",
            CliError::Lib(e) => e.code(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "pentropy",
    version,
    about = "Additive partition entropies and measure extraction"
)]
struct Cli {
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Add wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    #[value(name = "d")]
    Small,
    #[value(name = "D")]
    Big,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an entropy on an algebra.
    Entropy {
        #[arg(long, alias = "entropy")]
        spec: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Join of two algebras.
    Join {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Exact independence check.
    Independent {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Algebra independent of `a` with the given atom measures.
    IndependentProfile {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        profile: PathBuf,
    },
    /// Pseudometric d, or D = d + |N(a) - N(b)|.
    Distance {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value = "d")]
        metric: Metric,
    },
    /// Increment of an entropy under swapping v and w.
    Delta {
        #[arg(long, alias = "entropy")]
        spec: PathBuf,
        #[arg(long)]
        v: PathBuf,
        #[arg(long)]
        w: PathBuf,
        /// Atom ratio as "p/q" (default 2/1); cross-checked against its square.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Recover the measure on an n-cell grid.
    Extract {
        #[arg(long, alias = "entropy")]
        spec: PathBuf,
        #[arg(long, default_value_t = 16)]
        grid: usize,
    },
    /// Extract, then check the residual entropy.
    Decompose {
        #[arg(long, alias = "entropy")]
        spec: PathBuf,
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a named property suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Outcome {
    payload: Value,
    args: Value,
    seeded: bool,
    suite_failed: bool,
}

fn ok(payload: Value, args: Value) -> Outcome {
    Outcome {
        payload,
        args,
        seeded: false,
        suite_failed: false,
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn path_str(p: &std::path::Path) -> Value {
    Value::String(p.display().to_string())
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Entropy { .. } => "entropy",
        Command::Join { .. } => "join",
        Command::Independent { .. } => "independent",
        Command::IndependentProfile { .. } => "independent-profile",
        Command::Distance { .. } => "distance",
        Command::Delta { .. } => "delta",
        Command::Extract { .. } => "extract",
        Command::Decompose { .. } => "decompose",
        Command::Verify { .. } => "verify",
    }
}

fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Entropy { spec, algebra } => {
            let (s, a) = (input::spec(spec)?, input::algebra(algebra)?);
            Ok(ok(
                json!({ "value": s.eval(&a) }),
                json!({ "spec": path_str(spec), "algebra": path_str(algebra) }),
            ))
        }
        Command::Join { a, b } => {
            let (x, y) = (input::algebra(a)?, input::algebra(b)?);
            Ok(ok(
                json!({ "algebra": to_value(&x.join(&y)) }),
                json!({ "a": path_str(a), "b": path_str(b) }),
            ))
        }
        Command::Independent { a, b } => {
            let (x, y) = (input::algebra(a)?, input::algebra(b)?);
            Ok(ok(
                json!({ "independent": x.is_independent(&y) }),
                json!({ "a": path_str(a), "b": path_str(b) }),
            ))
        }
        Command::IndependentProfile { a, profile } => {
            let (x, p) = (input::algebra(a)?, input::profile(profile)?);
            Ok(ok(
                json!({ "algebra": to_value(&x.independent_with_profile(&p)) }),
                json!({ "a": path_str(a), "profile": path_str(profile) }),
            ))
        }
        Command::Distance { a, b, metric } => {
            let (x, y) = (input::algebra(a)?, input::algebra(b)?);
            let (label, value) = match metric {
                Metric::Small => ("d", x.distance_d(&y)),
                Metric::Big => ("D", x.distance_big_d(&y)),
            };
            Ok(ok(
                json!({ "metric": label, "value": to_value(&value), "approx": value.to_f64() }),
                json!({ "a": path_str(a), "b": path_str(b), "metric": label }),
            ))
        }
        Command::Delta { spec, v, w, lambda } => {
            let s = input::spec(spec)?;
            let pair = SwapPair::new(input::set(v)?, input::set(w)?);
            let result = match lambda {
                Some(text) => delta_checked(&s, &pair, &input::rat(text)?)?,
                None => pentropy::delta(&s, &pair)?,
            };
            let lambda_echo = lambda
                .clone()
                .unwrap_or_else(|| Rat::int(CANONICAL_LAMBDA).to_string());
            Ok(ok(
                to_value(&result),
                json!({ "spec": path_str(spec), "v": path_str(v), "w": path_str(w), "lambda": lambda_echo }),
            ))
        }
        Command::Extract { spec, grid } => {
            let g = extract_measure(&input::spec(spec)?, *grid)?;
            Ok(ok(
                json!({ "grid": to_value(&g) }),
                json!({ "spec": path_str(spec), "grid": grid }),
            ))
        }
        Command::Decompose {
            spec,
            grid,
            trials,
            seed,
        } => {
            let report = decompose(&input::spec(spec)?, *grid, *trials, *seed)?;
            Ok(Outcome {
                payload: to_value(&report),
                args: json!({ "spec": path_str(spec), "grid": grid, "trials": trials, "seed": seed }),
                seeded: true,
                suite_failed: false,
            })
        }
        Command::Verify {
            suite,
            trials,
            seed,
        } => {
            let summary = run_suite(suite, *trials, *seed)?;
            let mut payload = to_value(&summary);
            let failures: Vec<&str> = summary.failures().iter().map(|p| p.name.as_str()).collect();
            payload["passed"] = json!(summary.passed());
            payload["failures"] = json!(failures);
            Ok(Outcome {
                payload,
                args: json!({ "suite": suite, "trials": trials, "seed": seed }),
                seeded: true,
                suite_failed: !summary.passed(),
            })
        }
    }
}

fn render(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    text
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Output {
            path: path.clone(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            // A closed pipe is not worth a second error report.
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn fail(err: &CliError) -> ExitCode {
    let body = json!({ "error": err.code(), "detail": err.to_string() });
    let _ = std::io::stdout().lock().write_all(render(&body).as_bytes());
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            return fail(&CliError::Usage(
                e.render().to_string().trim_end().to_string(),
            ))
        }
    };

    let start = Instant::now();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };

    let mut report = Map::new();
    report.insert("command".into(), json!(name(&cli.command)));
    report.insert("args".into(), outcome.args);
    report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    if outcome.seeded {
        report.insert("generator".into(), json!(GENERATOR));
    }
    if cli.timing {
        report.insert(
            "elapsed_ms".into(),
            json!(start.elapsed().as_secs_f64() * 1e3),
        );
    }
    let mut body = match outcome.payload {
        Value::Object(map) => map,
        other => Map::from_iter([("result".to_string(), other)]),
    };
    body.insert("report".into(), Value::Object(report));

    if let Err(e) = emit(&render(&Value::Object(body)), cli.output.as_ref()) {
        return fail(&e);
    }
    if outcome.suite_failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
