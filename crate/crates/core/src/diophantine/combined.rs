use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::approx::{
    check_type_args, convergent_distances, interval_dist, summarize, TypeEstimate,
};
use super::DiophError;
use crate::exactnum::QuadraticSurd;

/// Fixed-point precision for combinations that leave a single quadratic field.
pub const COMBINATION_BITS: usize = 256;

/// Partial quotients of a real known to lie in `[lo, hi] / 2^bits`, stopping
/// at the first quotient on which the two endpoints disagree.
fn interval_partial_quotients(lo: &BigInt, hi: &BigInt, bits: usize) -> (Vec<BigInt>, bool) {
    let scale = BigInt::from(1) << bits;
    let (mut n1, mut d1) = (lo.clone(), scale.clone());
    let (mut n2, mut d2) = (hi.clone(), scale);
    let mut out = Vec::new();
    loop {
        let a1 = n1.div_floor(&d1);
        let a2 = n2.div_floor(&d2);
        if a1 != a2 {
            return (out, true);
        }
        let r1 = &n1 - &a1 * &d1;
        let r2 = &n2 - &a2 * &d2;
        out.push(a1);
        if r1.is_zero() || r2.is_zero() {
            // an endpoint is rational here; the value itself is not pinned down
            return (out, true);
        }
        (n1, d1) = (d1, r1);
        (n2, d2) = (d2, r2);
    }
}

/// Type estimate for `θ = Σ h_i ω_i` (`h_i >= 0`, at least one positive).
///
/// Within one quadratic field `θ` is an exact surd and this is
/// [`estimate_type`](super::estimate_type). Across fields each `ω_i` is
/// bracketed exactly in `2^-256` fixed point, and only partial quotients on
/// which both ends of the bracket agree are used; `truncated` is set if the
/// certified convergents stop before `N`.
pub fn combined_type_check(
    omegas: &[QuadraticSurd],
    h: &[u64],
    n_max: u64,
    t_grid: &[f64],
) -> Result<TypeEstimate, DiophError> {
    check_type_args(n_max, t_grid)?;
    if omegas.len() != h.len() || omegas.is_empty() || omegas.len() > super::MAX_OMEGAS {
        return Err(DiophError::Precondition(format!(
            "need 1..={} values with matching multipliers, got {} and {}",
            super::MAX_OMEGAS,
            omegas.len(),
            h.len()
        )));
    }
    if h.iter().all(|&x| x == 0) {
        return Err(DiophError::Precondition(
            "at least one multiplier must be positive".into(),
        ));
    }
    let active: Vec<(&QuadraticSurd, BigInt)> = omegas
        .iter()
        .zip(h)
        .filter(|(_, &k)| k > 0)
        .map(|(w, &k)| (w, BigInt::from(k)))
        .collect();
    let bound = active
        .iter()
        .all(|(w, _)| !w.is_rational())
        .then_some(active.len() as f64);

    // Same field (or rationals): exact.
    let mut exact = Some(QuadraticSurd::integer(0));
    for (w, k) in &active {
        exact = exact.and_then(|acc| acc.try_add(&w.mul_int(k)).ok());
    }
    if let Some(theta) = exact {
        let dists = convergent_distances(&theta, n_max);
        return Ok(summarize(&dists, n_max, t_grid, bound, false));
    }

    let scale = BigInt::from(1) << COMBINATION_BITS;
    let mut lo = BigInt::zero();
    let mut width = BigInt::zero();
    for (w, k) in &active {
        lo += w.mul_int(&scale).floor() * k;
        width += k;
    }
    let hi = &lo + &width;
    let (terms, stopped_early) = interval_partial_quotients(&lo, &hi, COMBINATION_BITS);
    let mut dists = Vec::new();
    let (mut q2, mut q1) = (BigInt::from(1), BigInt::zero());
    let mut reached_limit = false;
    for a in &terms {
        let q = a * &q1 + &q2;
        match q.to_u64().filter(|&v| v <= n_max) {
            Some(qu) => dists.push((
                qu,
                interval_dist(&(&lo * &q), &(&hi * &q), COMBINATION_BITS),
            )),
            None => {
                reached_limit = true;
                break;
            }
        }
        q2 = std::mem::replace(&mut q1, q);
    }
    let truncated = stopped_early && !reached_limit;
    Ok(summarize(&dists, n_max, t_grid, bound, truncated))
}
