use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cf::CfExpander;
use super::DiophError;
use crate::exactnum::{big_ratio_f64, compare_surd, QuadraticSurd};

/// `α = a/q + θ/q²` from the convergent with the largest `q <= Q_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct BestApprox {
    pub a: BigInt,
    pub q: BigInt,
    /// `θ = (α − a/q) q²`, exact; `|θ| <= 1`.
    pub theta: QuadraticSurd,
}

pub fn best_approx(alpha: &QuadraticSurd, q_max: u64) -> Result<BestApprox, DiophError> {
    if q_max == 0 {
        return Err(DiophError::Precondition("Q_max must be at least 1".into()));
    }
    let limit = BigInt::from(q_max);
    let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
    let mut best = None;
    for a in CfExpander::new(alpha) {
        let p = &a * &p1 + &p2;
        let q = &a * &q1 + &q2;
        if q > limit {
            break;
        }
        best = Some((p.clone(), q.clone()));
        p2 = std::mem::replace(&mut p1, p);
        q2 = std::mem::replace(&mut q1, q);
    }
    let (a, q) = best.expect("q_0 = 1 <= Q_max");
    let theta = alpha
        .mul_int(&(&q * &q))
        .try_sub(&QuadraticSurd::integer(&a * &q))?;
    let one = QuadraticSurd::integer(1);
    debug_assert!(
        compare_surd(&theta, &one)?.is_le() && compare_surd(&-theta.clone(), &one)?.is_le()
    );
    Ok(BestApprox { a, q, theta })
}

/// Largest `N` accepted by the type estimates.
pub const TYPE_N_LIMIT: u64 = 10_000_000;

/// `E(N, t) = min_{n<=N} n^t ‖αn‖` on a grid of `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeEstimate {
    pub n_max: u64,
    pub t_grid: Vec<f64>,
    /// `E(N, t)` per grid point.
    pub e_values: Vec<f64>,
    /// `E(⌊√N⌋, t)`, to show the trend.
    pub e_sqrt_n: Vec<f64>,
    /// `n` attaining each minimum.
    pub argmin: Vec<u64>,
    /// `E(N,t) < E(√N,t)/2`: the minimum is still falling at this range.
    pub trending_to_zero: Vec<bool>,
    /// `‖αn‖ = 0` for some `n <= N`.
    pub rational: bool,
    /// Sum of the component types (each quadratic irrational has type 1),
    /// bounding the type of a combination; `None` when a component is rational.
    pub analytic_upper_bound: Option<f64>,
    /// Partial quotients could not all be certified up to `N`.
    pub truncated: bool,
}

/// `(q_k, ‖q_k α‖)` for the convergent denominators `q_k <= n_max`.
pub(crate) fn convergent_distances(alpha: &QuadraticSurd, n_max: u64) -> Vec<(u64, f64)> {
    let mut out = Vec::new();
    let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
    for a in CfExpander::new(alpha) {
        let q = &a * &q1 + &q2;
        let Some(qu) = q.to_u64().filter(|&v| v <= n_max) else {
            break;
        };
        out.push((qu, alpha.mul_int(&q).dist_to_int()));
        q2 = std::mem::replace(&mut q1, q);
    }
    out
}

pub(crate) fn summarize(
    dists: &[(u64, f64)],
    n_max: u64,
    t_grid: &[f64],
    analytic_upper_bound: Option<f64>,
    truncated: bool,
) -> TypeEstimate {
    let min_upto = |limit: u64, t: f64| -> (f64, u64) {
        dists
            .iter()
            .filter(|(q, _)| *q <= limit)
            .map(|&(q, d)| ((q as f64).powf(t) * d, q))
            .fold(
                (f64::INFINITY, 0),
                |acc, v| if v.0 < acc.0 { v } else { acc },
            )
    };
    let sqrt_n = n_max.isqrt().max(1);
    let mut e_values = Vec::new();
    let mut e_sqrt_n = Vec::new();
    let mut argmin = Vec::new();
    let mut trending = Vec::new();
    for &t in t_grid {
        let (e, n) = min_upto(n_max, t);
        let (es, _) = min_upto(sqrt_n, t);
        e_values.push(e);
        e_sqrt_n.push(es);
        argmin.push(n);
        trending.push(e < es / 2.0);
    }
    TypeEstimate {
        n_max,
        t_grid: t_grid.to_vec(),
        rational: dists.iter().any(|&(_, d)| d == 0.0),
        e_values,
        e_sqrt_n,
        argmin,
        trending_to_zero: trending,
        analytic_upper_bound,
        truncated,
    }
}

/// Estimates `E(N, t)` for `t >= 0` from convergent denominators only: for
/// `q_k <= n < q_{k+1}` both `n^t >= q_k^t` and `‖nα‖ >= ‖q_k α‖`, so the
/// minimum over all `n <= N` is attained at some `q_k`.
pub fn estimate_type(
    alpha: &QuadraticSurd,
    n_max: u64,
    t_grid: &[f64],
) -> Result<TypeEstimate, DiophError> {
    check_type_args(n_max, t_grid)?;
    let dists = convergent_distances(alpha, n_max);
    let bound = (!alpha.is_rational()).then_some(1.0);
    Ok(summarize(&dists, n_max, t_grid, bound, false))
}

pub(crate) fn check_type_args(n_max: u64, t_grid: &[f64]) -> Result<(), DiophError> {
    if n_max == 0 || n_max > TYPE_N_LIMIT {
        return Err(DiophError::Precondition(format!(
            "need 1 <= N <= 10^7, got {n_max}"
        )));
    }
    if t_grid.iter().any(|t| !(*t >= 0.0)) {
        return Err(DiophError::Precondition("exponents t must be >= 0".into()));
    }
    Ok(())
}

/// `‖x‖` for `x` given as an interval `[lo, hi] / 2^bits` of width below one.
pub(crate) fn interval_dist(lo: &BigInt, hi: &BigInt, bits: usize) -> f64 {
    let one = BigInt::one() << bits;
    let mid: BigInt = (lo + hi) >> 1;
    let frac = mid.mod_floor(&one);
    let f = big_ratio_f64(frac.magnitude(), one.magnitude());
    f.min(1.0 - f)
}
