//! The sawtooth function and its trigonometric approximation, direct
//! evaluation of `Σ Λ(n) e(f(n))`, the Heath-Brown decomposition of `Λ`, and
//! empirical checks of exponential-sum bounds against direct sums.

mod bounds;
mod heath_brown;
mod optimize;
mod vaaler;

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::accum::ComplexSum;
use crate::arith::{isqrt, PrimeSieve};
use crate::exactnum::QuadraticSurd;

pub use bounds::{
    type_sum_eval, type_sum_grid, vdc_bound_check, Coeffs, MonomialPhase, SumKind, TypeSumReport,
    VdcOrder, VdcReport, DEFAULT_VDC_CONSTANT, TYPE_SUM_LIMIT,
};
pub use heath_brown::{heath_brown_check, heath_brown_rhs, HbParams};
pub use optimize::{optimal_q_select, Envelope, QChoice};
pub use vaaler::{vaaler_build, GridCheck, VaalerApprox};

/// Largest `hi` accepted by [`lambda_expsum`].
pub const EXPSUM_LIMIT: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExpSumError {
    #[error("H must be at least 1")]
    InvalidH,
    #[error(
        "Vaaler majorant fails at t = {t}: |ψ − approx| exceeds majorant by {excess:e} (H = {h})"
    )]
    VaalerValidation { h: usize, t: f64, excess: f64 },
    #[error("{0}")]
    Precondition(String),
    #[error("envelope has no terms")]
    EmptyEnvelope,
}

/// `ψ(t) = t − ⌊t⌋ − 1/2`, in `[−1/2, 1/2)`.
pub fn sawtooth(t: f64) -> f64 {
    let f = t - t.floor();
    // t - floor(t) can round up to 1 for tiny negative t.
    if f >= 1.0 {
        -0.5
    } else {
        f - 0.5
    }
}

/// `e(t) = exp(2πit)`, with `t` reduced mod 1 first.
#[inline]
pub fn e(t: f64) -> Complex64 {
    let r = t - t.round();
    let (s, c) = (TAU * r).sin_cos();
    Complex64::new(c, s)
}

/// `x` as an unevaluated sum `hi + lo` of two doubles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SplitReal {
    pub hi: f64,
    pub lo: f64,
}

impl SplitReal {
    pub fn new(x: f64) -> Self {
        SplitReal { hi: x, lo: 0.0 }
    }

    /// Nearest double plus the next 53 bits of an exact surd.
    pub fn from_surd(s: &QuadraticSurd) -> Self {
        let hi = s.to_f64();
        let hi_exact = dyadic_surd(hi);
        let lo = s.try_sub(&hi_exact).map(|r| r.to_f64()).unwrap_or(0.0);
        SplitReal { hi, lo }
    }

    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }

    pub fn neg(self) -> Self {
        SplitReal {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    /// `{x·n}` up to rounding of the final sum; the product `hi·n` is split
    /// exactly with a fused multiply-add before reduction.
    #[inline]
    pub fn frac_mul(&self, n: f64) -> f64 {
        let p = self.hi * n;
        let err = self.hi.mul_add(n, -p);
        let t = (p - p.floor()) + err + self.lo * n;
        t - t.floor()
    }
}

/// A finite double as an exact rational surd.
fn dyadic_surd(x: f64) -> QuadraticSurd {
    use num_bigint::BigInt;
    if x == 0.0 {
        return QuadraticSurd::integer(0);
    }
    let bits = x.to_bits();
    let sign: i64 = if bits >> 63 == 1 { -1 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mant = if exp == 0 {
        (bits & ((1 << 52) - 1)) << 1
    } else {
        (bits & ((1 << 52) - 1)) | (1 << 52)
    };
    let e2 = exp - 1075;
    let m = BigInt::from(sign) * BigInt::from(mant);
    if e2 >= 0 {
        QuadraticSurd::integer(m << e2 as usize)
    } else {
        QuadraticSurd::rational(m, BigInt::from(1) << (-e2) as usize).expect("nonzero")
    }
}

/// Phase `f(n) = h·n^γ + m1·n + m2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpec {
    pub h: i64,
    pub gamma: f64,
    pub m1: SplitReal,
    pub m2: f64,
}

impl PhaseSpec {
    pub fn new(h: i64, gamma: f64, m1: f64, m2: f64) -> Self {
        PhaseSpec {
            h,
            gamma,
            m1: SplitReal::new(m1),
            m2,
        }
    }

    /// Purely linear phase `m1·n` with `m1` given exactly.
    pub fn linear(m1: &QuadraticSurd) -> Self {
        PhaseSpec {
            h: 0,
            gamma: 0.5,
            m1: SplitReal::from_surd(m1),
            m2: 0.0,
        }
    }

    /// All parameters negated; the sums become complex conjugates.
    pub fn negated(&self) -> Self {
        PhaseSpec {
            h: -self.h,
            gamma: self.gamma,
            m1: self.m1.neg(),
            m2: -self.m2,
        }
    }

    /// `f(n) mod 1`, in `[0, 1)` up to rounding.
    #[inline]
    pub fn phase(&self, n: u64) -> f64 {
        let nf = n as f64;
        let mut t = self.m1.frac_mul(nf) + self.m2;
        if self.h != 0 {
            let p = self.h as f64 * nf.powf(self.gamma);
            t += p - p.floor();
        }
        t - t.floor()
    }

    #[inline]
    pub fn e_at(&self, n: u64) -> Complex64 {
        e(self.phase(n))
    }
}

/// `Σ_{lo<n<=hi} Λ(n) e(f(n))`, summed with compensation in fixed block order.
pub fn lambda_expsum(phase: &PhaseSpec, lo: u64, hi: u64) -> Result<Complex64, ExpSumError> {
    if hi > EXPSUM_LIMIT {
        return Err(ExpSumError::Precondition(format!(
            "hi = {hi} exceeds {EXPSUM_LIMIT} for direct evaluation"
        )));
    }
    if hi <= lo {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let sieve = PrimeSieve::new(hi);
    let parts = sieve.map_blocks(lo + 1, hi + 1, |ps| {
        let mut acc = ComplexSum::default();
        for &p in ps {
            acc.add(phase.e_at(p) * (p as f64).ln());
        }
        acc
    });
    let mut total = ComplexSum::default();
    for part in &parts {
        total.merge(part);
    }
    // Prime powers p^k, k >= 2.
    for p in sieve.primes(2, isqrt(hi) + 1) {
        let lp = (p as f64).ln();
        let mut q = p * p;
        loop {
            if q > lo {
                total.add(phase.e_at(q) * lp);
            }
            match q.checked_mul(p) {
                Some(next) if next <= hi => q = next,
                _ => break,
            }
        }
    }
    Ok(total.sum())
}

/// `max_{x/2<v<=x} |Σ_{x/2<n<=v} Λ(n) e(f(n))|` together with the full
/// dyadic sum `Σ_{x/2<n<=x}`.
pub fn lambda_dyadic_max(phase: &PhaseSpec, x: u64) -> Result<(f64, Complex64), ExpSumError> {
    if x > EXPSUM_LIMIT {
        return Err(ExpSumError::Precondition(format!(
            "x = {x} exceeds {EXPSUM_LIMIT} for direct evaluation"
        )));
    }
    let lo = x / 2;
    let sieve = PrimeSieve::new(x);
    let mut powers = Vec::new();
    for p in sieve.primes(2, isqrt(x) + 1) {
        let mut q = p * p;
        loop {
            if q > lo {
                powers.push((q, p));
            }
            match q.checked_mul(p) {
                Some(next) if next <= x => q = next,
                _ => break,
            }
        }
    }
    powers.sort_unstable();
    let mut acc = ComplexSum::default();
    let mut best = 0.0f64;
    let mut next_power = powers.iter().peekable();
    let mut step = |n: u64, p: u64, acc: &mut ComplexSum| {
        acc.add(phase.e_at(n) * (p as f64).ln());
        best = best.max(acc.sum().norm());
    };
    sieve.for_each_prime(lo + 1, x + 1, |p| {
        while let Some(&&(q, r)) = next_power.peek() {
            if q > p {
                break;
            }
            step(q, r, &mut acc);
            next_power.next();
        }
        step(p, p, &mut acc);
    });
    for &(q, r) in next_power {
        step(q, r, &mut acc);
    }
    Ok((best, acc.sum()))
}

/// `|h|^(1/6) x^(γ/6+3/4) + |h|^(−1/3) x^(1−γ/3) + |h|^(1/4) x^(γ/4+5/8)
/// + |h|^(−1/4) x^(1−γ/4) + x^(22/25)`, the bound for [`lambda_dyadic_max`]
/// with `x^ε` dropped.
pub fn lambda_sum_envelope(h: i64, gamma: f64, x: f64) -> f64 {
    let h = (h as f64).abs();
    h.powf(1.0 / 6.0) * x.powf(gamma / 6.0 + 0.75)
        + h.powf(-1.0 / 3.0) * x.powf(1.0 - gamma / 3.0)
        + h.powf(0.25) * x.powf(gamma / 4.0 + 0.625)
        + h.powf(-0.25) * x.powf(1.0 - gamma / 4.0)
        + x.powf(22.0 / 25.0)
}

/// One row of an envelope comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeRow {
    pub lemma: String,
    pub params: String,
    pub direct_value: f64,
    pub envelope: f64,
    pub ratio: f64,
}

impl EnvelopeRow {
    pub const CSV_HEADER: &'static str = "lemma,params,direct_value,envelope,ratio";

    pub fn csv_row(&self) -> String {
        format!(
            "{},\"{}\",{:.9e},{:.9e},{:.9e}",
            self.lemma, self.params, self.direct_value, self.envelope, self.ratio
        )
    }
}
