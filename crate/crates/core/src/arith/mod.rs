//! Primes, `Λ(n)` and `μ(n)` over 64-bit ranges.

mod primality;
mod sieve;
mod tables;

use thiserror::Error;

pub use primality::is_prime_u64;
pub use sieve::{isqrt, prime_pi, small_primes, PrimeSieve, PRIME_SEGMENT};
pub use tables::{ArithTables, PrimePower, DEFAULT_SEGMENT};

use crate::accum::Neumaier;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("invalid range [{lo}, {hi}): need 1 <= lo < hi <= 2^63")]
    InvalidRange { lo: u64, hi: u64 },
    #[error("segment of {len} entries exceeds the configured size {cap}")]
    SegmentTooLarge { len: u64, cap: u64 },
}

/// Largest `r` with `r^k <= n`.
pub fn iroot(n: u64, k: u32) -> u64 {
    if k == 1 || n <= 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    let pow_le = |r: u64| -> bool {
        let mut acc: u64 = 1;
        for _ in 0..k {
            match acc.checked_mul(r) {
                Some(v) if v <= n => acc = v,
                _ => return false,
            }
        }
        true
    };
    while r > 0 && !pow_le(r) {
        r -= 1;
    }
    while pow_le(r + 1) {
        r += 1;
    }
    r
}

/// `n = p^k` decomposition, found with exact integer roots.
pub fn prime_power_of(n: u64) -> Option<PrimePower> {
    if n < 2 {
        return None;
    }
    for k in 1..=63u32 {
        let r = iroot(n, k);
        if r < 2 {
            break;
        }
        if r.checked_pow(k) == Some(n) && is_prime_u64(r) {
            return Some(PrimePower { p: r, k });
        }
    }
    None
}

/// `Λ(n)`: `log p` when `n = p^k`, else 0.
pub fn von_mangoldt(n: u64) -> f64 {
    prime_power_of(n).map_or(0.0, |pp| pp.lambda())
}

/// `μ(n)` by trial division; intended for `n` up to ~`10^12`.
pub fn mobius(mut n: u64) -> i8 {
    assert!(n >= 1, "μ(0) is undefined");
    let mut sign = 1i8;
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return 0;
            }
            sign = -sign;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Chebyshev `ψ(x) = Σ_{n<=x} Λ(n)`, with compensated summation.
pub fn chebyshev_psi(x: u64) -> f64 {
    if x < 2 {
        return 0.0;
    }
    let sieve = PrimeSieve::new(x);
    let parts = sieve.map_blocks(0, x + 1, |ps| {
        let mut acc = Neumaier::default();
        for &p in ps {
            // Each prime contributes log p once per power p^k <= x.
            let mut k = 1u64;
            let mut pk = p;
            while let Some(next) = pk.checked_mul(p) {
                if next > x {
                    break;
                }
                pk = next;
                k += 1;
            }
            acc.add(k as f64 * (p as f64).ln());
        }
        acc
    });
    let mut total = Neumaier::default();
    for part in parts {
        total.add(part.sum());
    }
    total.sum()
}
