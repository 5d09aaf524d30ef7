use clap::Args;
use serde::{Deserialize, Serialize};

use super::{clap_defaults, count_arg, surd, to_json, CliError, JobOutput};
use crate::expsum::{
    lambda_dyadic_max, lambda_expsum, lambda_sum_envelope, type_sum_grid, vdc_bound_check, Coeffs,
    EnvelopeRow, MonomialPhase, PhaseSpec, SplitReal, SumKind, VdcOrder, EXPSUM_LIMIT,
    TYPE_SUM_LIMIT,
};

/// Exactly one of `--phase`, `--vdc` and `--type-sum` selects the mode.
#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExpsumArgs {
    /// Σ Λ(n) e(h n^γ + m1 n + m2) for a phase such as `h=1,gamma=12/13,m1=sqrt(2),m2=0`
    #[arg(long)]
    pub phase: Option<String>,
    /// van der Corput check of Σ_{a<n<=2a} e(coeff·n^gamma)
    #[arg(long)]
    pub vdc: bool,
    /// Type I or Type II bilinear sums over a grid of h and x
    #[arg(long, value_name = "I|II")]
    pub type_sum: Option<String>,
    /// Limits x (phase and type-sum modes)
    #[arg(long, value_delimiter = ',', default_value = "1e6", value_parser = count_arg)]
    pub x: Vec<u64>,
    /// Derivative orders for --vdc
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub order: Vec<u32>,
    /// Range starts for --vdc
    #[arg(long, value_delimiter = ',', default_value = "1e4", value_parser = count_arg)]
    pub a: Vec<u64>,
    /// Monomial coefficient for --vdc
    #[arg(long, default_value_t = 1.0)]
    pub coeff: f64,
    /// Exponent γ for --vdc and --type-sum
    #[arg(long, default_value = "12/13")]
    pub gamma: String,
    /// Frequencies h for --type-sum
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub h: Vec<i64>,
    /// a_k for --type-sum: ones, log or mobius
    #[arg(long, default_value = "ones")]
    pub coeffs_a: String,
    /// b_l for --type-sum (default ones for I, mobius for II)
    #[arg(long)]
    pub coeffs_b: Option<String>,
    /// Ratio above which a --vdc check fails
    #[arg(long, default_value_t = 10.0)]
    pub constant: f64,
}

impl Default for ExpsumArgs {
    fn default() -> Self {
        clap_defaults()
    }
}

pub(super) fn run(args: &ExpsumArgs) -> Result<JobOutput, CliError> {
    let modes = usize::from(args.phase.is_some())
        + usize::from(args.vdc)
        + usize::from(args.type_sum.is_some());
    if modes != 1 {
        return Err(CliError::Usage(
            "give exactly one of --phase, --vdc, --type-sum".into(),
        ));
    }
    let mut failure = None;
    let rows = if let Some(p) = &args.phase {
        phase_rows(p, &args.x)?
    } else if args.vdc {
        let (rows, failed) = vdc_rows(args)?;
        if !failed.is_empty() {
            failure = Some(format!(
                "envelope ratio above {} for {}",
                args.constant,
                failed.join(", ")
            ));
        }
        rows
    } else {
        type_rows(args)?
    };
    Ok(JobOutput {
        header: EnvelopeRow::CSV_HEADER.into(),
        rows: rows.iter().map(EnvelopeRow::csv_row).collect(),
        json: to_json(&rows),
        notes: Vec::new(),
        failure,
    })
}

fn real(s: &str) -> Result<f64, CliError> {
    Ok(surd(s)?.to_f64())
}

/// Parses `key=value` pairs separated by commas. `m1` keeps its extra bits.
pub fn parse_phase(s: &str) -> Result<PhaseSpec, CliError> {
    let mut phase = PhaseSpec::new(0, 12.0 / 13.0, 0.0, 0.0);
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected key=value in phase, got `{part}`")))?;
        match k.trim() {
            "h" => {
                phase.h = v
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("h must be an integer, got `{v}`")))?
            }
            "gamma" => phase.gamma = real(v)?,
            "m1" => phase.m1 = SplitReal::from_surd(&surd(v)?),
            "m2" => phase.m2 = real(v)?,
            other => return Err(CliError::Usage(format!("unknown phase key `{other}`"))),
        }
    }
    Ok(phase)
}

fn describe(phase: &PhaseSpec) -> String {
    format!(
        "h={} gamma={} m1={} m2={}",
        phase.h,
        phase.gamma,
        phase.m1.value(),
        phase.m2
    )
}

fn phase_rows(spec: &str, xs: &[u64]) -> Result<Vec<EnvelopeRow>, CliError> {
    let phase = parse_phase(spec)?;
    let mut rows = Vec::new();
    for &x in xs {
        if x > EXPSUM_LIMIT {
            return Err(CliError::Resource(format!(
                "x = {x} exceeds {EXPSUM_LIMIT} for direct evaluation"
            )));
        }
        let s = lambda_expsum(&phase, 0, x)?.norm();
        let xf = x as f64;
        rows.push(EnvelopeRow {
            lemma: "lambda-sum".into(),
            params: format!("{} x={x}", describe(&phase)),
            direct_value: s,
            envelope: xf,
            ratio: s / xf,
        });
        if phase.h != 0 {
            let (m, _) = lambda_dyadic_max(&phase, x)?;
            let env = lambda_sum_envelope(phase.h, phase.gamma, xf);
            rows.push(EnvelopeRow {
                lemma: "lambda-dyadic-max".into(),
                params: format!("{} x={x}", describe(&phase)),
                direct_value: m,
                envelope: env,
                ratio: m / env,
            });
        }
    }
    Ok(rows)
}

fn vdc_rows(args: &ExpsumArgs) -> Result<(Vec<EnvelopeRow>, Vec<String>), CliError> {
    let phase = MonomialPhase {
        coeff: args.coeff,
        exponent: real(&args.gamma)?,
    };
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for &a in &args.a {
        if a > EXPSUM_LIMIT / 2 {
            return Err(CliError::Resource(format!(
                "a = {a} exceeds {} for direct evaluation",
                EXPSUM_LIMIT / 2
            )));
        }
        for &o in &args.order {
            let order = match o {
                2 => VdcOrder::Second,
                3 => VdcOrder::Third,
                _ => return Err(CliError::Usage(format!("order must be 2 or 3, got {o}"))),
            };
            let r = vdc_bound_check(phase, a, order, args.constant)?;
            if !r.passed {
                failed.push(format!("a={a} order={o}"));
            }
            rows.push(r.row());
        }
    }
    Ok((rows, failed))
}

fn coeffs(s: &str) -> Result<Coeffs, CliError> {
    match s {
        "ones" => Ok(Coeffs::Ones),
        "log" => Ok(Coeffs::Log),
        "mobius" => Ok(Coeffs::Mobius),
        _ => Err(CliError::Usage(format!(
            "unknown coefficients `{s}` (ones, log, mobius)"
        ))),
    }
}

fn type_rows(args: &ExpsumArgs) -> Result<Vec<EnvelopeRow>, CliError> {
    let kind = match args
        .type_sum
        .as_deref()
        .map(str::to_ascii_uppercase)
        .as_deref()
    {
        Some("I" | "1") => SumKind::TypeI,
        Some("II" | "2") => SumKind::TypeII,
        other => {
            return Err(CliError::Usage(format!(
                "type sum must be I or II, got `{}`",
                other.unwrap_or("")
            )))
        }
    };
    if let Some(&x) = args.x.iter().find(|&&x| x > TYPE_SUM_LIMIT) {
        return Err(CliError::Resource(format!(
            "x = {x} exceeds {TYPE_SUM_LIMIT} for a direct double sum"
        )));
    }
    let a = coeffs(&args.coeffs_a)?;
    let b = match (&args.coeffs_b, kind) {
        (Some(s), _) => coeffs(s)?,
        (None, SumKind::TypeI) => Coeffs::Ones,
        (None, SumKind::TypeII) => Coeffs::Mobius,
    };
    let reports = type_sum_grid(kind, &args.h, &args.x, real(&args.gamma)?, &a, &b)?;
    Ok(reports.iter().map(|r| r.row()).collect())
}
