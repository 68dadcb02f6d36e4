//! Command-line front end.
//!
//! Exit statuses: 0 success, 1 invalid configuration, 2 verification found
//! an undetected error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use crate::code_family::{build_hybrid_code, pair_count, trivial_split, CodeError, LabelCoordinate};
use crate::json::{bound_json, code_json};
use crate::verifier::{verify_hybrid, verify_quantum_union, Engine, VerificationReport, VerifyError};

pub const THREADS_ENV: &str = "ZQ_HYBRID_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
    #[error("serializing output: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(name = "zq-hybrid", version, about = "Build and verify [[n, n-3:1, 2]] hybrid codes over Z_q")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct the code and write it as JSON.
    Build(CodeArgs),
    /// Check hybrid detectability of every error up to the given weight.
    Verify(VerifyArgs),
    /// Check the union of the inner codes as a single quantum code.
    VerifyUnion(VerifyArgs),
    /// Compare K·M against the binary bound for odd-length distance-2 codes.
    Bound(CodeArgs),
    /// Split on a free label coordinate and certify the result.
    Split(SplitArgs),
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Alphabet size of each qudit.
    #[arg(long)]
    pub q: usize,
    /// Code length; must be odd and at least 3.
    #[arg(long)]
    pub n: usize,
    /// Output file (standard output when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Largest error weight to sweep.
    #[arg(long, default_value_t = 1)]
    pub weight: usize,
    #[command(flatten)]
    pub run: SweepArgs,
}

/// Options shared by every command that runs a sweep.
#[derive(Debug, Args)]
pub struct SweepArgs {
    /// `factored` or `dense`.
    #[arg(long, default_value = "factored")]
    pub engine: Engine,
    /// Worker threads; defaults to all available cores.
    #[arg(long, env = THREADS_ENV)]
    pub threads: Option<usize>,
    /// Write `wall_time_ms` as null so identical runs give identical bytes.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub run: SweepArgs,
    /// Free label coordinate to split on, e.g. `b1`.
    #[arg(long)]
    pub coordinate: LabelCoordinate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Build,
    Verify,
    VerifyUnion,
    Bound,
    Split,
}

/// A validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub q: usize,
    pub n: usize,
    pub weight: usize,
    pub engine: Engine,
    pub parallelism: Option<usize>,
    pub output: Option<PathBuf>,
    pub coordinate: Option<LabelCoordinate>,
    pub timing: bool,
}

impl RunConfig {
    pub fn new(command: CommandKind, q: usize, n: usize) -> Self {
        Self {
            command,
            q,
            n,
            weight: 1,
            engine: Engine::Factored,
            parallelism: None,
            output: None,
            coordinate: None,
            timing: true,
        }
    }

    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let sweep_cfg = |kind, code: CodeArgs, run: SweepArgs| Self {
            engine: run.engine,
            parallelism: run.threads,
            output: code.output,
            timing: !run.no_timing,
            ..Self::new(kind, code.q, code.n)
        };
        let cfg = match cli.command {
            Command::Build(a) => Self { output: a.output, ..Self::new(CommandKind::Build, a.q, a.n) },
            Command::Bound(a) => Self { output: a.output, ..Self::new(CommandKind::Bound, a.q, a.n) },
            Command::Verify(a) => Self { weight: a.weight, ..sweep_cfg(CommandKind::Verify, a.code, a.run) },
            Command::VerifyUnion(a) => Self { weight: a.weight, ..sweep_cfg(CommandKind::VerifyUnion, a.code, a.run) },
            Command::Split(a) => Self { coordinate: Some(a.coordinate), ..sweep_cfg(CommandKind::Split, a.code, a.run) },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let invalid = |m: String| Err(CliError::InvalidConfig(m));
        if self.q < 2 {
            return invalid(format!("q must be at least 2 (got {})", self.q));
        }
        if self.n.is_multiple_of(2) {
            return invalid("n must be odd".to_string());
        }
        if self.n < 3 {
            return invalid(format!("n must be at least 3 (got {})", self.n));
        }
        if self.weight == 0 || self.weight > self.n {
            return invalid(format!("weight must be in 1..={} (got {})", self.n, self.weight));
        }
        if self.parallelism == Some(0) {
            return invalid("thread count must be positive".to_string());
        }
        if self.command == CommandKind::Split {
            let t = pair_count(self.n)?;
            match self.coordinate {
                None => return invalid("split needs --coordinate".to_string()),
                Some(_) if t < 2 => return invalid(format!("cannot split: K = 1 for n = {}", self.n)),
                Some(LabelCoordinate::A(i) | LabelCoordinate::B(i)) if i + 1 >= t => {
                    return invalid(format!("coordinate must be one of a1..a{0}, b1..b{0}", t - 1));
                }
                Some(_) => {}
            }
        }
        Ok(())
    }
}

/// JSON artifact plus the exit status it implies.
#[derive(Debug)]
pub struct RunOutcome {
    pub artifact: Value,
    pub exit_code: i32,
}

fn report_value(report: &VerificationReport, timing: bool) -> Result<Value, CliError> {
    let mut v = serde_json::to_value(report)?;
    if !timing {
        v["wall_time_ms"] = Value::Null;
    }
    Ok(v)
}

fn report_outcome(report: VerificationReport, timing: bool) -> Result<RunOutcome, CliError> {
    let exit_code = if report.passed() { EXIT_OK } else { EXIT_VIOLATION };
    Ok(RunOutcome { artifact: report_value(&report, timing)?, exit_code })
}

pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    config.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(p) = config.parallelism {
        pool = pool.num_threads(p);
    }
    pool.build()?.install(|| run_inner(config))
}

fn run_inner(config: &RunConfig) -> Result<RunOutcome, CliError> {
    let (q, n) = (config.q, config.n);
    match config.command {
        CommandKind::Build => {
            Ok(RunOutcome { artifact: code_json(&build_hybrid_code(q, n)?), exit_code: EXIT_OK })
        }
        CommandKind::Bound => Ok(RunOutcome { artifact: bound_json(q, n)?, exit_code: EXIT_OK }),
        CommandKind::Verify => {
            report_outcome(verify_hybrid(&build_hybrid_code(q, n)?, config.weight, config.engine)?, config.timing)
        }
        CommandKind::VerifyUnion => report_outcome(
            verify_quantum_union(&build_hybrid_code(q, n)?, config.weight, config.engine)?,
            config.timing,
        ),
        CommandKind::Split => {
            let coord = config.coordinate.expect("validated");
            let code = build_hybrid_code(q, n)?;
            match trivial_split(&code, coord, config.engine) {
                Ok(out) => Ok(RunOutcome {
                    artifact: json!({
                        "code": code_json(&out.code),
                        "report": report_value(&out.report, config.timing)?,
                    }),
                    exit_code: EXIT_OK,
                }),
                Err(CodeError::SplitInvalid { error, report }) => Ok(RunOutcome {
                    artifact: json!({
                        "split_invalid": error.label(),
                        "report": report_value(&report, config.timing)?,
                    }),
                    exit_code: EXIT_VIOLATION,
                }),
                Err(CodeError::CannotSplit | CodeError::InvalidSelector { .. }) => {
                    Err(CliError::InvalidConfig(format!("cannot split on {coord}")))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

/// Writes the artifact as pretty JSON with a trailing newline.
pub fn write_artifact(config: &RunConfig, artifact: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(artifact)?;
    text.push('\n');
    match &config.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
