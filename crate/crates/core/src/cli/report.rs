use std::path::{Path, PathBuf};

use clap::Parser;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    pretty, resolve_threads, with_thread_pool, write_output, CliError, Format, Job, JobOutput,
    ReportArgs, RunContext,
};

/// A batch of jobs with shared settings.
///
/// Two file forms are accepted: a JSON object, or `key = value` lines with
/// keys `seed`, `threads`, `timing`, `output`, `format`, and one
/// `job = <subcommand> <flags>` line per job. `#` starts a comment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    /// Keep wall-clock timings; off by default so that reruns are byte-identical.
    #[serde(default)]
    pub timing: bool,
    #[serde(default)]
    pub output: OutputSpec,
    pub jobs: Vec<Job>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Parser)]
#[command(name = "job", no_binary_name = true)]
struct JobLine {
    #[command(subcommand)]
    job: Job,
}

impl ExperimentConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, CliError> {
        serde_json::from_str(s).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn from_key_values(s: &str) -> Result<Self, CliError> {
        let mut cfg = ExperimentConfig {
            seed: 0,
            threads: None,
            timing: false,
            output: OutputSpec::default(),
            jobs: Vec::new(),
        };
        for (i, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| CliError::Usage(format!("config line {}: {msg}", i + 1));
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key = value, got `{line}`")))?;
            let v = v.trim();
            match k.trim() {
                "seed" => cfg.seed = v.parse().map_err(|_| bad(format!("bad seed `{v}`")))?,
                "threads" => {
                    cfg.threads = Some(
                        v.parse()
                            .map_err(|_| bad(format!("bad thread count `{v}`")))?,
                    )
                }
                "timing" => {
                    cfg.timing = v
                        .parse()
                        .map_err(|_| bad(format!("timing must be true or false, got `{v}`")))?
                }
                "output" => cfg.output.path = Some(PathBuf::from(v)),
                "format" => {
                    cfg.output.format = match v {
                        "csv" => Format::Csv,
                        "json" => Format::Json,
                        _ => return Err(bad(format!("format must be csv or json, got `{v}`"))),
                    }
                }
                "job" => {
                    let tokens = split_words(v).map_err(bad)?;
                    let parsed = JobLine::try_parse_from(tokens).map_err(|e| bad(e.to_string()))?;
                    cfg.jobs.push(parsed.job);
                }
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }

    /// JSON when the text starts with `{`, otherwise `key = value` lines.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        if s.trim_start().starts_with('{') {
            Self::from_json(s)
        } else {
            Self::from_key_values(s)
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&s)
    }

    /// Runs every job in the current thread pool; outputs keep job order.
    pub fn run_jobs(&self) -> Result<Vec<JobOutput>, CliError> {
        let ctx = RunContext {
            seed: self.seed,
            timing: self.timing,
        };
        self.jobs.par_iter().map(|j| j.run(&ctx)).collect()
    }

    pub fn render(&self, outputs: &[JobOutput], format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = String::new();
                for (i, (job, out)) in self.jobs.iter().zip(outputs).enumerate() {
                    if i > 0 {
                        s.push('\n');
                    }
                    let desc = serde_json::to_string(job).expect("jobs serialize");
                    s.push_str(&format!("# job {}: {desc}\n", i + 1));
                    s.push_str(&out.csv());
                }
                s
            }
            Format::Json => {
                let jobs: Vec<Value> = self
                    .jobs
                    .iter()
                    .zip(outputs)
                    .map(|(job, out)| json!({ "job": job, "result": out.json }))
                    .collect();
                pretty(&json!({ "seed": self.seed, "jobs": jobs }))
            }
        }
    }
}

/// Whitespace-separated words; double quotes group words.
fn split_words(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut started = false;
    for ch in s.chars() {
        match ch {
            '"' => {
                quoted = !quoted;
                started = true;
            }
            c if c.is_whitespace() && !quoted => {
                if started {
                    out.push(std::mem::take(&mut cur));
                    started = false;
                }
            }
            c => {
                cur.push(c);
                started = true;
            }
        }
    }
    if quoted {
        return Err(format!("unbalanced quote in `{s}`"));
    }
    if started {
        out.push(cur);
    }
    Ok(out)
}

pub(super) fn run_report(
    args: &ReportArgs,
    threads: Option<usize>,
    format: Option<Format>,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    let threads = resolve_threads(threads, cfg.threads)?;
    let outputs = with_thread_pool(threads, || cfg.run_jobs())??;
    for n in outputs.iter().flat_map(|o| &o.notes) {
        eprintln!("note: {n}");
    }
    let text = cfg.render(&outputs, format.unwrap_or(cfg.output.format));
    write_output(output.or(cfg.output.path.as_deref()), &text)?;
    let failed: Vec<String> = outputs
        .iter()
        .enumerate()
        .filter_map(|(i, o)| o.failure.as_ref().map(|f| format!("job {}: {f}", i + 1)))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failed.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        assert_eq!(
            split_words("count --x 1e6").unwrap(),
            ["count", "--x", "1e6"]
        );
        assert_eq!(split_words(r#"a "b c"  d"#).unwrap(), ["a", "b c", "d"]);
        assert_eq!(split_words(r#"--beta """#).unwrap(), ["--beta", ""]);
        assert!(split_words("\"x").is_err());
    }
}
