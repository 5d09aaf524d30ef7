//! The `bps` command line: `count`, `verify`, `expsum`, `dioph` and `report`.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 resource limit
//! exceeded, 4 a check or identity failed.

mod count;
mod dioph;
mod expsum;
mod report;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::counting::CountError;
use crate::diophantine::DiophError;
use crate::exactnum::{parse_count, ExactError, QuadraticSurd, RationalExponent};
use crate::expsum::ExpSumError;
use crate::sequences::{BeattySpec, PsSpec, SequenceError};

pub use count::CountArgs;
pub use dioph::{BestArgs, CfArgs, DiophArgs, DiophOp, IndepArgs, TypeArgs};
pub use expsum::ExpsumArgs;
pub use report::{ExperimentConfig, OutputSpec};
pub use verify::{Suite, VerifyArgs};

/// Environment variable that overrides `--threads` and the config setting.
pub const THREADS_ENV: &str = "BPS_THREADS";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Failed(_) => 4,
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SequenceError> for CliError {
    fn from(e: SequenceError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::XTooLarge { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ExpSumError> for CliError {
    fn from(e: ExpSumError) -> Self {
        match e {
            ExpSumError::VaalerValidation { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<DiophError> for CliError {
    fn from(e: DiophError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "bps",
    version,
    about = "Primes in Beatty and Piatetski-Shapiro sequences: counts, identity checks, \
             exponential sums and Diophantine probes"
)]
pub struct Cli {
    /// Worker threads; the BPS_THREADS environment variable takes precedence
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    #[command(flatten)]
    Job(Job),
    /// Run a list of jobs from a config file (JSON or key=value lines)
    Report(ReportArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ReportArgs {
    pub config: PathBuf,
    /// Overrides the seed in the config
    #[arg(long)]
    pub seed: Option<u64>,
}

/// One unit of work; also the element type of a config's job list.
#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "cmd", rename_all = "kebab-case")]
pub enum Job {
    /// Count primes in an intersection of sequences
    Count(CountArgs),
    /// Run identity suites; exits with 4 if any check fails
    Verify(VerifyArgs),
    /// Exponential sums against their envelopes
    Expsum(ExpsumArgs),
    /// Continued fractions, approximations, type estimates, relation search
    Dioph(DiophArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Settings shared by the jobs of one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunContext {
    /// Seed for jobs that sample and give no seed of their own.
    pub seed: u64,
    /// Keep wall-clock timings in the output. Off for reproducible reports.
    pub timing: bool,
}

impl Default for RunContext {
    fn default() -> Self {
        RunContext {
            seed: 0,
            timing: true,
        }
    }
}

/// Result of one job: a CSV table, the same data as JSON, and whether a
/// check failed.
#[derive(Clone, Debug, PartialEq)]
pub struct JobOutput {
    pub header: String,
    pub rows: Vec<String>,
    pub json: Value,
    /// Remarks for stderr.
    pub notes: Vec<String>,
    pub failure: Option<String>,
}

impl JobOutput {
    pub fn csv(&self) -> String {
        let mut s = self.header.clone();
        s.push('\n');
        for r in &self.rows {
            s.push_str(r);
            s.push('\n');
        }
        s
    }
}

impl Job {
    pub fn run(&self, ctx: &RunContext) -> Result<JobOutput, CliError> {
        match self {
            Job::Count(a) => count::run(a, ctx),
            Job::Verify(a) => verify::run(a, ctx),
            Job::Expsum(a) => expsum::run(a),
            Job::Dioph(a) => dioph::run(a),
        }
    }
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Report(r) => {
            report::run_report(&r, cli.threads, cli.format, cli.output.as_deref())
        }
        Command::Job(job) => {
            let threads = resolve_threads(cli.threads, None)?;
            let out = with_thread_pool(threads, || job.run(&RunContext::default()))??;
            for n in &out.notes {
                eprintln!("note: {n}");
            }
            let text = match cli.format.unwrap_or_default() {
                Format::Csv => out.csv(),
                Format::Json => pretty(&out.json),
            };
            write_output(cli.output.as_deref(), &text)?;
            match out.failure {
                Some(f) => Err(CliError::Failed(f)),
                None => Ok(()),
            }
        }
    }
}

/// `BPS_THREADS`, else the flag, else the config value.
pub fn resolve_threads(
    flag: Option<usize>,
    config: Option<usize>,
) -> Result<Option<usize>, CliError> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV}=`{v}` is not a thread count")))?;
        return Ok(Some(n));
    }
    Ok(flag.or(config))
}

/// Runs `f` in a pool of `threads` workers (rayon's default when `None`).
pub fn with_thread_pool<R: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> Result<R, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    let pool = b
        .build()
        .map_err(|e| CliError::Resource(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let res = match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| CliError::Resource(format!("cannot write output: {e}")))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Values of every argument with a default, for `#[serde(default)]`.
fn clap_defaults<T: Args + FromArgMatches>() -> T {
    let cmd = T::augment_args(clap::Command::new("defaults"));
    let m = cmd
        .try_get_matches_from(["defaults"])
        .expect("all arguments have defaults");
    T::from_arg_matches(&m).expect("defaults convert")
}

/// Clap value parser for counts such as `1e8`.
fn count_arg(s: &str) -> Result<u64, String> {
    parse_count(s).map_err(|e| e.to_string())
}

fn surd(s: &str) -> Result<QuadraticSurd, CliError> {
    Ok(s.parse::<QuadraticSurd>()?)
}

fn surds(list: &[String]) -> Result<Vec<QuadraticSurd>, CliError> {
    list.iter().map(|s| surd(s)).collect()
}

/// Beatty specs from paired `--alpha`/`--beta` lists; missing offsets are 0.
fn beatty_specs(alphas: &[String], betas: &[String]) -> Result<Vec<BeattySpec>, CliError> {
    if betas.len() > alphas.len() {
        return Err(CliError::Usage(format!(
            "{} offsets given for {} moduli",
            betas.len(),
            alphas.len()
        )));
    }
    alphas
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let b = betas.get(i).map_or("0", String::as_str);
            Ok(BeattySpec::parse(a, b)?)
        })
        .collect()
}

fn ps_spec(c: Option<&str>) -> Result<Option<PsSpec>, CliError> {
    c.map(|c| {
        let e: RationalExponent = c.parse()?;
        Ok(PsSpec::lenient(e)?)
    })
    .transpose()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}
