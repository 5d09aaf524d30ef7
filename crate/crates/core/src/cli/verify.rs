use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    beatty_specs, clap_defaults, count_arg, csv_field, ps_spec, to_json, CliError, JobOutput,
    RunContext,
};
use crate::counting::{decomposition_audit, CountQuery};
use crate::expsum::{heath_brown_check, vaaler_build, HbParams};
use crate::sequences::{char_psi_identity_residual, BeattySpec, PsSpec, SequenceSpec};

/// Residual bound for the sawtooth expansions and Heath-Brown's identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;
/// Slack allowed in the Vaaler majorant inequality.
pub const VAALER_TOLERANCE: f64 = 1e-12;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Sawtooth expansions of the characteristic functions at random m
    Psi,
    /// Heath-Brown's identity for Λ(n)
    HeathBrown,
    /// Vaaler's trigonometric approximation of the sawtooth
    Vaaler,
    /// Seven-term decomposition of the two-Beatty-plus-exponent count
    Decomposition,
    All,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Beatty moduli for the psi and decomposition suites
    /// (default sqrt(2), sqrt(3))
    #[arg(long)]
    pub alpha: Vec<String>,
    /// Beatty offsets (default 3/10, 7/10 with the default moduli)
    #[arg(long)]
    pub beta: Vec<String>,
    /// Piatetski-Shapiro exponent (default 13/12 with the default moduli)
    #[arg(long)]
    pub c: Option<String>,
    /// Random points per sequence in the psi suite
    #[arg(long, default_value = "1e5", value_parser = count_arg)]
    pub samples: u64,
    /// Largest sampled m in the psi suite
    #[arg(long, default_value = "1e9", value_parser = count_arg)]
    pub mmax: u64,
    /// Sampling seed (default: the run's seed)
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 10.0)]
    pub z: f64,
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    /// Every n in 1..=nmax is checked
    #[arg(long, default_value = "2000", value_parser = count_arg)]
    pub nmax: u64,
    /// Additional random n in 1..=random-max
    #[arg(long, default_value = "0", value_parser = count_arg)]
    pub random: u64,
    /// Default ⌊2z^k⌋
    #[arg(long, value_parser = count_arg)]
    pub random_max: Option<u64>,
    /// Vaaler orders
    #[arg(long = "H", value_delimiter = ',', default_value = "4,16,64")]
    pub h: Vec<usize>,
    /// Grid points for the Vaaler check
    #[arg(long, default_value = "1e4", value_parser = count_arg)]
    pub points: u64,
    /// Limits for the decomposition audit
    #[arg(long, value_delimiter = ',', default_value = "1e4", value_parser = count_arg)]
    pub x: Vec<u64>,
}

impl Default for VerifyArgs {
    fn default() -> Self {
        clap_defaults()
    }
}

/// One line of a verify table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub suite: String,
    pub params: String,
    pub checks: u64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl VerifyRow {
    pub const CSV_HEADER: &'static str = "suite,params,checks,max_residual,tolerance,passed";

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.3e},{:e},{}",
            self.suite,
            csv_field(&self.params),
            self.checks,
            self.max_residual,
            self.tolerance,
            self.passed
        )
    }
}

pub(super) fn run(args: &VerifyArgs, ctx: &RunContext) -> Result<JobOutput, CliError> {
    let seed = args.seed.unwrap_or(ctx.seed);
    let mut rows = Vec::new();
    let all = args.suite == Suite::All;
    if all || args.suite == Suite::Psi {
        rows.extend(psi_suite(args, seed)?);
    }
    if all || args.suite == Suite::HeathBrown {
        rows.extend(heath_brown_suite(args, seed)?);
    }
    if all || args.suite == Suite::Vaaler {
        rows.extend(vaaler_suite(args)?);
    }
    if all || args.suite == Suite::Decomposition {
        rows.extend(decomposition_suite(args)?);
    }
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{} ({})", r.suite, r.params))
        .collect();
    Ok(JobOutput {
        header: VerifyRow::CSV_HEADER.into(),
        rows: rows.iter().map(VerifyRow::csv_row).collect(),
        json: to_json(&rows),
        notes: Vec::new(),
        failure: (!failed.is_empty())
            .then(|| format!("identity check failed: {}", failed.join(", "))),
    })
}

fn sequences(args: &VerifyArgs) -> Result<(Vec<BeattySpec>, Option<PsSpec>), CliError> {
    if args.alpha.is_empty() && args.c.is_none() {
        let beatty = vec![
            BeattySpec::parse("sqrt(2)", "3/10")?,
            BeattySpec::parse("sqrt(3)", "7/10")?,
        ];
        return Ok((beatty, ps_spec(Some("13/12"))?));
    }
    Ok((
        beatty_specs(&args.alpha, &args.beta)?,
        ps_spec(args.c.as_deref())?,
    ))
}

fn psi_suite(args: &VerifyArgs, seed: u64) -> Result<Vec<VerifyRow>, CliError> {
    let (beatty, ps) = sequences(args)?;
    let mut specs: Vec<SequenceSpec> = beatty.into_iter().map(SequenceSpec::Beatty).collect();
    specs.extend(ps.map(SequenceSpec::Ps));
    if args.mmax < 1 {
        return Err(CliError::Usage("need mmax >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for spec in &specs {
        let ms: Vec<u64> = (0..args.samples)
            .map(|_| rng.gen_range(1..=args.mmax))
            .collect();
        let worst = ms
            .par_iter()
            .map(|&m| char_psi_identity_residual(spec, m).abs())
            .reduce(|| 0.0, f64::max);
        let name = match spec {
            SequenceSpec::Beatty(b) => format!("alpha={} beta={}", b.alpha(), b.beta()),
            SequenceSpec::Ps(p) => format!("c={}", p.c()),
        };
        rows.push(VerifyRow {
            suite: "psi".into(),
            params: format!("{name} m<={} seed={seed}", args.mmax),
            checks: args.samples,
            max_residual: worst,
            tolerance: IDENTITY_TOLERANCE,
            passed: worst < IDENTITY_TOLERANCE,
        });
    }
    Ok(rows)
}

fn hb_row(ns: &[u64], params: HbParams, label: String) -> Result<VerifyRow, CliError> {
    let residuals: Result<Vec<f64>, _> = ns
        .par_iter()
        .map(|&n| heath_brown_check(n, params))
        .collect();
    let worst = residuals?.into_iter().fold(0.0, f64::max);
    Ok(VerifyRow {
        suite: "heath-brown".into(),
        params: label,
        checks: ns.len() as u64,
        max_residual: worst,
        tolerance: IDENTITY_TOLERANCE,
        passed: worst < IDENTITY_TOLERANCE,
    })
}

fn heath_brown_suite(args: &VerifyArgs, seed: u64) -> Result<Vec<VerifyRow>, CliError> {
    let params = HbParams::new(args.z, args.k)?;
    let (z, k) = (args.z, args.k);
    let ns: Vec<u64> = (1..=args.nmax).collect();
    let mut rows = vec![hb_row(
        &ns,
        params,
        format!("z={z} k={k} n<={}", args.nmax),
    )?];
    if args.random > 0 {
        let hi = args
            .random_max
            .unwrap_or((2.0 * z.powi(k as i32)).floor() as u64)
            .max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ns: Vec<u64> = (0..args.random).map(|_| rng.gen_range(1..=hi)).collect();
        rows.push(hb_row(
            &ns,
            params,
            format!("z={z} k={k} random n<={hi} seed={seed}"),
        )?);
    }
    Ok(rows)
}

fn vaaler_suite(args: &VerifyArgs) -> Result<Vec<VerifyRow>, CliError> {
    let mut rows = Vec::new();
    for &h in &args.h {
        let v = vaaler_build(h)?;
        let grid = v.check_grid(args.points as usize);
        let hi = h as i64;
        let a_ok = (1..=hi).all(|j| {
            v.a(j).norm() <= 1.0 / (2.0 * j as f64) && v.a(-j).norm() <= 1.0 / (2.0 * j as f64)
        });
        let b_ok = (-hi..=hi).all(|j| (0.0..=1.0 / (h as f64 + 1.0)).contains(&v.b(j)));
        rows.push(VerifyRow {
            suite: "vaaler".into(),
            params: format!("H={h} points={}", args.points),
            checks: args.points,
            max_residual: grid.max_excess,
            tolerance: VAALER_TOLERANCE,
            passed: grid.max_excess <= VAALER_TOLERANCE
                && grid.min_majorant >= -VAALER_TOLERANCE
                && a_ok
                && b_ok,
        });
    }
    Ok(rows)
}

fn decomposition_suite(args: &VerifyArgs) -> Result<Vec<VerifyRow>, CliError> {
    let (beatty, ps) = sequences(args)?;
    let mut rows = Vec::new();
    for &x in &args.x {
        let r = decomposition_audit(&CountQuery::new(beatty.clone(), ps, x)?)?;
        rows.push(VerifyRow {
            suite: "decomposition".into(),
            params: format!("x={x} observed={} sum={:.9}", r.observed, r.sum),
            checks: 1,
            max_residual: r.abs_error,
            tolerance: r.tolerance,
            passed: r.passed,
        });
    }
    Ok(rows)
}
