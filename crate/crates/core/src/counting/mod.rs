//! Prime counts in intersections of Beatty and Piatetski-Shapiro sequences,
//! compared with their main terms, and an audit of the sawtooth
//! decomposition of the two-sequence count.

mod li;

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::accum::{ComplexSum, Neumaier};
use crate::arith::{is_prime_u64, ArithError, ArithTables, PrimeSieve};
use crate::sequences::{BeattySpec, PsSpec, SequenceError};

pub use li::li;

/// Largest number of Beatty sequences in one query.
pub const MAX_BEATTY: usize = 8;
/// Upper limit for the sieve path.
pub const SIEVE_LIMIT: u64 = 1 << 40;
/// Upper limit for the exact audit.
pub const AUDIT_LIMIT: u64 = 10_000_000;

/// Indices per parallel enumeration block.
const ENUM_BLOCK: u64 = 1 << 18;

#[derive(Debug, Error)]
pub enum CountError {
    #[error("x = {0} is too small (need x >= {1})")]
    XTooSmall(u64, u64),
    #[error("x = {x} exceeds the limit {limit} for this computation")]
    XTooLarge { x: u64, limit: u64 },
    #[error("{0} Beatty sequences given; at most {MAX_BEATTY} are supported")]
    TooManySequences(usize),
    #[error("method {} needs a sequence to enumerate", .0.as_str())]
    MethodUnavailable(Method),
    #[error("the decomposition audit needs exactly two Beatty sequences and an exponent")]
    AuditShape,
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// How the primes were counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Walk the Piatetski-Shapiro terms and test each for primality and
    /// Beatty membership.
    EnumeratePs,
    /// Walk the sparsest Beatty sequence (no exponent given).
    EnumerateBeatty,
    /// Sieve all primes and test each for membership.
    SieveFilter,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::EnumeratePs => "enumerate-ps",
            Method::EnumerateBeatty => "enumerate-beatty",
            Method::SieveFilter => "sieve-filter",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Method::EnumeratePs,
            Method::EnumerateBeatty,
            Method::SieveFilter,
        ]
        .into_iter()
        .find(|m| m.as_str() == s)
        .ok_or_else(|| {
            format!("unknown method `{s}` (enumerate-ps, enumerate-beatty, sieve-filter)")
        })
    }
}

/// Primes `p <= x` lying in every listed sequence.
#[derive(Clone, Debug)]
pub struct CountQuery {
    pub beatty: Vec<BeattySpec>,
    pub ps: Option<PsSpec>,
    pub x: u64,
}

impl CountQuery {
    pub fn new(beatty: Vec<BeattySpec>, ps: Option<PsSpec>, x: u64) -> Result<Self, CountError> {
        if x < 2 {
            return Err(CountError::XTooSmall(x, 2));
        }
        if beatty.len() > MAX_BEATTY {
            return Err(CountError::TooManySequences(beatty.len()));
        }
        Ok(CountQuery { beatty, ps, x })
    }

    pub fn with_x(&self, x: u64) -> Result<Self, CountError> {
        Self::new(self.beatty.clone(), self.ps, x)
    }

    /// `α_1 ⋯ α_ξ` (1 for an empty list).
    pub fn alpha_product(&self) -> f64 {
        self.beatty.iter().map(BeattySpec::alpha_f64).product()
    }

    /// Membership of `m` in every sequence (primality not included).
    #[inline]
    pub fn in_all(&self, m: u64) -> bool {
        self.beatty.iter().all(|b| b.contains(m)) && self.ps.is_none_or(|s| s.contains(m))
    }

    /// Main term `x^γ / (α_1⋯α_ξ log x)`, or `x / (α_1⋯α_ξ log x)` without an
    /// exponent.
    pub fn predicted(&self) -> f64 {
        let x = self.x as f64;
        let g = self.ps.map_or(1.0, |s| s.gamma().value());
        x.powf(g) / (self.alpha_product() * x.ln())
    }

    /// `∫_2^x γ t^(γ−1) / log t dt / (α_1⋯α_ξ) = γ (li(x^γ) − li(2^γ)) / (α_1⋯α_ξ)`.
    pub fn predicted_li(&self) -> f64 {
        let x = self.x as f64;
        let g = self.ps.map_or(1.0, |s| s.gamma().value());
        g * (li(x.powf(g)) - li(2f64.powf(g))) / self.alpha_product()
    }

    /// Method used by [`count_intersection_primes`].
    pub fn default_method(&self) -> Method {
        if self.ps.is_some() {
            Method::EnumeratePs
        } else if !self.beatty.is_empty() {
            Method::EnumerateBeatty
        } else {
            Method::SieveFilter
        }
    }
}

/// Observed count against the predicted main term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub x: u64,
    pub xi: usize,
    pub alphas: Vec<String>,
    pub betas: Vec<String>,
    pub c: Option<String>,
    pub observed: u64,
    pub predicted: f64,
    pub predicted_li: f64,
    pub relative_error: f64,
    pub runtime_ms: u64,
    pub method: Method,
}

impl CountReport {
    pub const CSV_HEADER: &'static str =
        "x,xi,alphas,betas,c,observed,predicted,predicted_li,rel_err,method,ms";

    /// One CSV row; list-valued fields are `;`-separated.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.6},{:.6},{:.6},{},{}",
            self.x,
            self.xi,
            csv_field(&self.alphas.join(";")),
            csv_field(&self.betas.join(";")),
            csv_field(self.c.as_deref().unwrap_or("")),
            self.observed,
            self.predicted,
            self.predicted_li,
            self.relative_error,
            self.method.as_str(),
            self.runtime_ms
        )
    }

    /// `|observed − predicted_li| / predicted_li`.
    pub fn relative_error_li(&self) -> f64 {
        (self.observed as f64 - self.predicted_li).abs() / self.predicted_li
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn report(q: &CountQuery, observed: u64, method: Method, started: Instant) -> CountReport {
    let predicted = q.predicted();
    CountReport {
        x: q.x,
        xi: q.beatty.len(),
        alphas: q.beatty.iter().map(|b| b.alpha().to_string()).collect(),
        betas: q.beatty.iter().map(|b| b.beta().to_string()).collect(),
        c: q.ps.map(|s| s.c().to_string()),
        observed,
        predicted,
        predicted_li: q.predicted_li(),
        relative_error: if predicted > 0.0 {
            (observed as f64 - predicted).abs() / predicted
        } else {
            0.0
        },
        runtime_ms: started.elapsed().as_millis() as u64,
        method,
    }
}

/// Counts with the given method. Every method returns the same count.
pub fn count_with(q: &CountQuery, method: Method) -> Result<CountReport, CountError> {
    let started = Instant::now();
    let observed = match method {
        Method::EnumeratePs => {
            let ps = q.ps.ok_or(CountError::MethodUnavailable(method))?;
            let last = ps.count_terms_upto(q.x);
            count_over_indices(
                last,
                |n| ps.term(n).expect("term <= x"),
                |m| q.beatty.iter().all(|b| b.contains(m)),
            )
        }
        Method::EnumerateBeatty => {
            let (i, sparse) = q
                .beatty
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.alpha_f64().total_cmp(&b.1.alpha_f64()))
                .ok_or(CountError::MethodUnavailable(method))?;
            let first = sparse.first_index_at_least(1);
            // indices whose term is <= x: those below first_index_at_least(x + 1)
            let end = sparse.first_index_at_least(q.x + 1);
            let span = end - first;
            count_over_indices(
                span,
                |k| sparse.term(k - 1 + first) as u64,
                |m| {
                    q.beatty
                        .iter()
                        .enumerate()
                        .all(|(j, b)| j == i || b.contains(m))
                        && q.ps.is_none_or(|s| s.contains(m))
                },
            )
        }
        Method::SieveFilter => {
            if q.x > SIEVE_LIMIT {
                return Err(CountError::XTooLarge {
                    x: q.x,
                    limit: SIEVE_LIMIT,
                });
            }
            let sieve = PrimeSieve::new(q.x);
            sieve
                .map_blocks(0, q.x + 1, |ps| {
                    ps.iter().filter(|&&p| q.in_all(p)).count() as u64
                })
                .into_iter()
                .sum()
        }
    };
    Ok(report(q, observed, method, started))
}

/// Counts primes among `term(1..=last)` that pass `keep`, in parallel blocks.
fn count_over_indices(
    last: u64,
    term: impl Fn(u64) -> u64 + Sync,
    keep: impl Fn(u64) -> bool + Sync,
) -> u64 {
    let blocks = last.div_ceil(ENUM_BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * ENUM_BLOCK + 1;
            let hi = (lo + ENUM_BLOCK).min(last + 1);
            (lo..hi)
                .filter(|&n| {
                    let m = term(n);
                    is_prime_u64(m) && keep(m)
                })
                .count() as u64
        })
        .sum()
}

/// `π⁽ᶜ⁾(x)`: primes `p <= x` of the form `⌊n^c⌋`, found by enumerating the
/// sequence.
pub fn count_ps_primes(ps: &PsSpec, x: u64) -> Result<CountReport, CountError> {
    let q = CountQuery::new(Vec::new(), Some(*ps), x)?;
    count_with(&q, Method::EnumeratePs)
}

/// Primes `p <= x` in every sequence of the query, with the method chosen by
/// [`CountQuery::default_method`].
pub fn count_intersection_primes(q: &CountQuery) -> Result<CountReport, CountError> {
    count_with(q, q.default_method())
}

/// Counts by enumeration and by sieving; returns both reports.
pub fn two_path_count(q: &CountQuery) -> Result<(CountReport, CountReport), CountError> {
    let a = count_with(q, q.default_method())?;
    let b = count_with(q, Method::SieveFilter)?;
    Ok((a, b))
}

/// The seven sums whose total is the two-sequence count, with
/// `Δ(p) = (p+1)^γ − p^γ` kept exact.
///
/// Writing `X_i(p) = ω_i + Ψ_i(p)` and `X⁽ᶜ⁾(p) = Δ(p) + Ψ_c(p)`:
/// `S1 = ω1ω2 ΣX⁽ᶜ⁾`, `S2 = ω1 ΣΔΨ2`, `S3 = ω2 ΣΔΨ1`, `S4 = ΣΔΨ1Ψ2`,
/// `S5 = ω1 ΣΨcΨ2`, `S6 = ω2 ΣΨcΨ1`, `S7 = ΣΨcΨ1Ψ2`, all over primes `p <= x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub x: u64,
    pub s: [f64; 7],
    pub sum: f64,
    pub observed: u64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn decomposition_audit(q: &CountQuery) -> Result<DecompositionReport, CountError> {
    let (Some(ps), [b1, b2]) = (q.ps, q.beatty.as_slice()) else {
        return Err(CountError::AuditShape);
    };
    if q.x > AUDIT_LIMIT {
        return Err(CountError::XTooLarge {
            x: q.x,
            limit: AUDIT_LIMIT,
        });
    }
    let (w1, w2) = (b1.omega_f64(), b2.omega_f64());
    let sieve = PrimeSieve::new(q.x);
    let parts = sieve.map_blocks(0, q.x + 1, |primes| {
        let mut acc: [Neumaier; 7] = Default::default();
        let mut observed = 0u64;
        for &p in primes {
            let i1 = b1.psi_increment(p);
            let i2 = b2.psi_increment(p);
            let ic = ps.psi_increment(p);
            let (p1, p2, pc, d) = (i1.psi_diff, i2.psi_diff, ic.psi_diff, ic.delta());
            acc[0].add(w1 * w2 * f64::from(ic.x));
            acc[1].add(w1 * d * p2);
            acc[2].add(w2 * d * p1);
            acc[3].add(d * p1 * p2);
            acc[4].add(w1 * pc * p2);
            acc[5].add(w2 * pc * p1);
            acc[6].add(pc * p1 * p2);
            if b1.contains(p) && b2.contains(p) && ps.contains(p) {
                observed += 1;
            }
        }
        (acc, observed)
    });
    let mut totals: [Neumaier; 7] = Default::default();
    let mut observed = 0u64;
    for (acc, o) in parts {
        for (t, a) in totals.iter_mut().zip(acc.iter()) {
            t.add(a.sum());
        }
        observed += o;
    }
    let s = totals.map(|t| t.sum());
    let sum = s.iter().copied().collect::<Neumaier>().sum();
    let abs_error = (sum - observed as f64).abs();
    let tolerance = 1e-6 * (observed as f64).max(1.0);
    Ok(DecompositionReport {
        x: q.x,
        s,
        sum,
        observed,
        abs_error,
        tolerance,
        passed: abs_error <= tolerance,
    })
}

/// Both sides of the prime-to-`Λ` transfer
/// `Σ_{N<p<=N'} g(p) ≪ (1/log N) max_{N<N1<=2N} |Σ_{N<n<=N1} Λ(n) g(n)| + N^(1/2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    pub n: u64,
    pub n_prime: u64,
    /// `|Σ_{N<p<=N'} g(p)|`
    pub lhs: f64,
    /// `max_{N<N1<=2N} |Σ_{N<n<=N1} Λ(n) g(n)|`
    pub lambda_max: f64,
    /// `lambda_max / log N + √N`
    pub rhs_shape: f64,
    /// `lhs / rhs_shape`, the implied constant at this `N`.
    pub ratio: f64,
}

/// Evaluates both sides for `g` with `|g| <= 1` on `(N, N']`, `N < N' <= 2N`.
pub fn prime_to_lambda_transfer_check(
    g: impl Fn(u64) -> Complex64,
    n: u64,
    n_prime: u64,
) -> Result<TransferReport, CountError> {
    if n < 2 {
        return Err(CountError::XTooSmall(n, 2));
    }
    if n > 1_000_000 || n_prime > 2 * n || n_prime < n {
        return Err(CountError::XTooLarge {
            x: n_prime,
            limit: 2 * n.min(1_000_000),
        });
    }
    let table = ArithTables::sieve_segment(n + 1, 2 * n + 1)?;
    let mut primes = ComplexSum::default();
    let mut weighted = ComplexSum::default();
    let mut lambda_max = 0.0f64;
    for k in n + 1..=2 * n {
        let lam = table.lambda(k);
        if lam == 0.0 {
            continue;
        }
        let gk = g(k);
        weighted.add(gk * lam);
        lambda_max = lambda_max.max(weighted.sum().norm());
        if k <= n_prime && table.is_prime(k) {
            primes.add(gk);
        }
    }
    let lhs = primes.sum().norm();
    let rhs_shape = lambda_max / (n as f64).ln() + (n as f64).sqrt();
    Ok(TransferReport {
        n,
        n_prime,
        lhs,
        lambda_max,
        rhs_shape,
        ratio: lhs / rhs_shape,
    })
}

#[cfg(test)]
mod tests;
