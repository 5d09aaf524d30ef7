//! Continued fractions of exact surds, best rational approximations,
//! empirical irrationality-type estimates and a search for small integer
//! linear relations.

mod approx;
mod cf;
mod combined;
mod independence;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{ExactError, QuadraticSurd};

pub use approx::{best_approx, estimate_type, BestApprox, TypeEstimate, TYPE_N_LIMIT};
pub use cf::{cf_expand, CfExpander, ContinuedFraction, Period};
pub use combined::{combined_type_check, COMBINATION_BITS};
pub use independence::{independence_probe, IndependenceReport, INDEPENDENCE_CAVEAT, PROBE_BUDGET};

/// Most values accepted by the multi-value checks.
pub const MAX_OMEGAS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiophError {
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// JSON-friendly view of a continued fraction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CfReport {
    pub alpha: String,
    pub partial_quotients: Vec<String>,
    pub period: Option<Period>,
    pub terminates: bool,
    /// `(p_k, q_k)`
    pub convergents: Vec<(String, String)>,
}

impl CfReport {
    pub fn new(alpha: &QuadraticSurd, cf: &ContinuedFraction) -> Self {
        CfReport {
            alpha: alpha.to_string(),
            partial_quotients: cf.partial_quotients.iter().map(|a| a.to_string()).collect(),
            period: cf.periodic_tail,
            terminates: cf.terminates,
            convergents: cf
                .convergents()
                .into_iter()
                .map(|(p, q)| (p.to_string(), q.to_string()))
                .collect(),
        }
    }
}

/// JSON-friendly view of a best approximation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestApproxReport {
    pub alpha: String,
    pub q_max: u64,
    pub a: String,
    pub q: String,
    pub theta: String,
    pub theta_value: f64,
}

impl BestApproxReport {
    pub fn new(alpha: &QuadraticSurd, q_max: u64, b: &BestApprox) -> Self {
        BestApproxReport {
            alpha: alpha.to_string(),
            q_max,
            a: b.a.to_string(),
            q: b.q.to_string(),
            theta: b.theta.to_string(),
            theta_value: b.theta.to_f64(),
        }
    }
}

#[cfg(test)]
mod tests;
