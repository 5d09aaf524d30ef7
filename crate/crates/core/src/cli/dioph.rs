use clap::{Args, Subcommand};
use serde::{Deserialize, Serialize};

use super::{count_arg, csv_field, surd, surds, to_json, CliError, JobOutput};
use crate::diophantine::{
    best_approx, cf_expand, combined_type_check, estimate_type, independence_probe,
    BestApproxReport, CfReport, TypeEstimate, TYPE_N_LIMIT,
};

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiophArgs {
    #[command(subcommand)]
    pub op: DiophOp,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiophOp {
    /// Continued fraction expansion
    Cf(CfArgs),
    /// Best rational approximation with bounded denominator
    Best(BestArgs),
    /// min_{n<=N} n^t ‖αn‖ for a value or an integer combination of values
    Type(TypeArgs),
    /// Search for c_0 + Σ c_i ω_i = 0 with small integers
    Indep(IndepArgs),
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CfArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value_t = 10)]
    #[serde(default = "default_terms")]
    pub terms: usize,
}

fn default_terms() -> usize {
    10
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestArgs {
    #[arg(long)]
    pub alpha: String,
    /// Largest denominator
    #[arg(long, value_parser = count_arg)]
    pub qmax: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeArgs {
    /// Single value
    #[arg(long, conflicts_with = "omega")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    /// Values ω_i of the combination Σ h_i ω_i (repeatable)
    #[arg(long)]
    #[serde(default)]
    pub omega: Vec<String>,
    /// Multipliers h_i (default all 1)
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub h: Vec<u64>,
    #[arg(long = "N", value_parser = count_arg)]
    #[serde(rename = "N")]
    pub n: u64,
    /// Exponents t
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5")]
    #[serde(default = "default_t")]
    pub t: Vec<f64>,
}

fn default_t() -> Vec<f64> {
    vec![0.5, 1.0, 1.5]
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndepArgs {
    /// Values ω_i (repeatable)
    #[arg(long, required = true)]
    pub omega: Vec<String>,
    /// Coefficient bound
    #[arg(long = "B", default_value_t = 50)]
    #[serde(rename = "B", default = "default_bound")]
    pub bound: i64,
}

fn default_bound() -> i64 {
    50
}

pub(super) fn run(args: &DiophArgs) -> Result<JobOutput, CliError> {
    match &args.op {
        DiophOp::Cf(a) => cf(a),
        DiophOp::Best(a) => best(a),
        DiophOp::Type(a) => type_estimate(a),
        DiophOp::Indep(a) => indep(a),
    }
}

fn output(header: &str, rows: Vec<String>, json: serde_json::Value) -> JobOutput {
    JobOutput {
        header: header.into(),
        rows,
        json,
        notes: Vec::new(),
        failure: None,
    }
}

fn cf(a: &CfArgs) -> Result<JobOutput, CliError> {
    let alpha = surd(&a.alpha)?;
    let cf = cf_expand(&alpha, a.terms);
    let report = CfReport::new(&alpha, &cf);
    let pq = &report.partial_quotients;
    let expansion = match pq.split_first() {
        Some((a0, rest)) => format!("[{a0};{}]", rest.join(",")),
        None => "[]".into(),
    };
    let (p, q) = report.convergents.last().cloned().unwrap_or_default();
    let row = format!(
        "{},{},{},{},{},{},{}/{}",
        csv_field(&report.alpha),
        pq.len(),
        csv_field(&expansion),
        cf.periodic_tail
            .map_or(String::new(), |p| p.start.to_string()),
        cf.periodic_tail
            .map_or(String::new(), |p| p.length.to_string()),
        cf.terminates,
        p,
        q
    );
    Ok(output(
        "alpha,terms,expansion,period_start,period_length,terminates,last_convergent",
        vec![row],
        to_json(&report),
    ))
}

fn best(a: &BestArgs) -> Result<JobOutput, CliError> {
    let alpha = surd(&a.alpha)?;
    let b = best_approx(&alpha, a.qmax)?;
    let r = BestApproxReport::new(&alpha, a.qmax, &b);
    let row = format!(
        "{},{},{},{},{},{:e}",
        csv_field(&r.alpha),
        r.q_max,
        r.a,
        r.q,
        csv_field(&r.theta),
        r.theta_value
    );
    Ok(output(
        "alpha,q_max,a,q,theta,theta_value",
        vec![row],
        to_json(&r),
    ))
}

fn type_estimate(a: &TypeArgs) -> Result<JobOutput, CliError> {
    if a.n > TYPE_N_LIMIT {
        return Err(CliError::Resource(format!(
            "N = {} exceeds {TYPE_N_LIMIT}",
            a.n
        )));
    }
    let (label, h, est): (String, String, TypeEstimate) = match (&a.alpha, a.omega.is_empty()) {
        (Some(alpha), true) => (
            alpha.clone(),
            "1".into(),
            estimate_type(&surd(alpha)?, a.n, &a.t)?,
        ),
        (None, false) => {
            let omegas = surds(&a.omega)?;
            let h = if a.h.is_empty() {
                vec![1; omegas.len()]
            } else {
                a.h.clone()
            };
            let hs: Vec<String> = h.iter().map(u64::to_string).collect();
            (
                a.omega.join(";"),
                hs.join(";"),
                combined_type_check(&omegas, &h, a.n, &a.t)?,
            )
        }
        _ => {
            return Err(CliError::Usage(
                "give --alpha or at least one --omega".into(),
            ))
        }
    };
    let rows = (0..est.t_grid.len())
        .map(|i| {
            format!(
                "{},{},{},{},{:.9e},{:.9e},{},{},{},{},{}",
                csv_field(&label),
                h,
                est.n_max,
                est.t_grid[i],
                est.e_values[i],
                est.e_sqrt_n[i],
                est.argmin[i],
                est.trending_to_zero[i],
                est.rational,
                est.analytic_upper_bound
                    .map_or(String::new(), |b| b.to_string()),
                est.truncated
            )
        })
        .collect();
    Ok(output(
        "alpha,h,n_max,t,e,e_sqrt_n,argmin,trending_to_zero,rational,analytic_upper_bound,truncated",
        rows,
        to_json(&est),
    ))
}

fn indep(a: &IndepArgs) -> Result<JobOutput, CliError> {
    let omegas = surds(&a.omega)?;
    let r = independence_probe(&omegas, a.bound)?;
    let relation = match &r.relation {
        Some(c) => c.iter().map(i64::to_string).collect::<Vec<_>>().join(";"),
        None => "none".into(),
    };
    let row = format!(
        "{},{},{},{},{},{}",
        csv_field(&a.omega.join(";")),
        r.bound,
        relation,
        r.relation_space_dim,
        r.vectors_tried,
        r.exhaustive
    );
    let mut out = output(
        "omegas,bound,relation,relation_space_dim,vectors_tried,exhaustive",
        vec![row],
        to_json(&r),
    );
    out.notes.push(r.caveat.clone());
    Ok(out)
}
