use clap::Args;
use serde::{Deserialize, Serialize};

use super::{beatty_specs, count_arg, ps_spec, to_json, CliError, JobOutput, RunContext};
use crate::counting::{count_with, two_path_count, CountQuery, CountReport, Method};

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountArgs {
    /// Beatty modulus α > 1 in exact syntax, e.g. `sqrt(2)` (repeatable)
    #[arg(long)]
    #[serde(default)]
    pub alpha: Vec<String>,
    /// Offset β for the α in the same position (default 0)
    #[arg(long)]
    #[serde(default)]
    pub beta: Vec<String>,
    /// Piatetski-Shapiro exponent c as num/den
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    /// Upper limit(s), e.g. `1e8` or `1e6,1e7`
    #[arg(long, required = true, value_delimiter = ',', value_parser = count_arg)]
    pub x: Vec<u64>,
    /// enumerate-ps, enumerate-beatty or sieve-filter
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    /// Count by enumeration and by sieving; fail unless the counts agree
    #[arg(long)]
    #[serde(default)]
    pub both_paths: bool,
}

pub(super) fn run(args: &CountArgs, ctx: &RunContext) -> Result<JobOutput, CliError> {
    let beatty = beatty_specs(&args.alpha, &args.beta)?;
    let ps = ps_spec(args.c.as_deref())?;
    if args.x.is_empty() {
        return Err(CliError::Usage("no x given".into()));
    }
    let mut reports = Vec::new();
    let mut failure = None;
    for &x in &args.x {
        let q = CountQuery::new(beatty.clone(), ps, x)?;
        if args.both_paths {
            let (a, b) = two_path_count(&q)?;
            if a.observed != b.observed {
                failure = Some(format!(
                    "x = {x}: {} counted {} but {} counted {}",
                    a.method.as_str(),
                    a.observed,
                    b.method.as_str(),
                    b.observed
                ));
            }
            reports.push(a);
            reports.push(b);
        } else {
            let method = args.method.unwrap_or(q.default_method());
            reports.push(count_with(&q, method)?);
        }
    }
    if !ctx.timing {
        for r in &mut reports {
            r.runtime_ms = 0;
        }
    }
    Ok(JobOutput {
        header: CountReport::CSV_HEADER.into(),
        rows: reports.iter().map(CountReport::csv_row).collect(),
        json: to_json(&reports),
        notes: Vec::new(),
        failure,
    })
}
