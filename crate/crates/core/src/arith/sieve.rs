//! Segmented sieve of Eratosthenes over odd numbers.

use rayon::prelude::*;

/// Numbers covered by one prime-only segment.
pub const PRIME_SEGMENT: u64 = 1 << 21;

/// Primes `<= limit` by a plain sieve. Used for the base primes of the
/// segmented sieve (limit is at most ~`2^32`).
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Largest `s` with `s*s <= n`.
pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

/// Sieve `[lo, hi)` (odd numbers only, plus 2) and call `f` on each prime in
/// increasing order. `base` must contain every prime up to `√hi`.
fn sieve_window(lo: u64, hi: u64, base: &[u64], buf: &mut Vec<bool>, mut f: impl FnMut(u64)) {
    if hi <= lo {
        return;
    }
    if lo <= 2 && hi > 2 {
        f(2);
    }
    // Index i <-> odd number first_odd + 2i.
    let first_odd = if lo % 2 == 1 {
        lo.max(3)
    } else {
        (lo + 1).max(3)
    };
    if first_odd >= hi {
        return;
    }
    let count = ((hi - first_odd + 1) / 2) as usize;
    buf.clear();
    buf.resize(count, true);
    for &p in base.iter().skip(1) {
        let pp = p * p;
        if pp >= hi {
            break;
        }
        // First odd multiple of p that is >= max(p², first_odd).
        let start = if pp >= first_odd {
            pp
        } else {
            let m = first_odd.div_ceil(p) * p;
            if m % 2 == 0 {
                m + p
            } else {
                m
            }
        };
        let mut idx = ((start - first_odd) / 2) as usize;
        let step = p as usize;
        while idx < count {
            buf[idx] = false;
            idx += step;
        }
    }
    for (i, &is_p) in buf.iter().enumerate() {
        if is_p {
            let n = first_odd + 2 * i as u64;
            if n > 1 {
                f(n);
            }
        }
    }
}

/// Streaming access to the primes of a range, segment by segment.
pub struct PrimeSieve {
    base: Vec<u64>,
    limit: u64,
}

impl PrimeSieve {
    /// Prepares base primes for ranges whose upper end is at most `limit`.
    pub fn new(limit: u64) -> Self {
        let base = small_primes(isqrt(limit) + 1);
        PrimeSieve { base, limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Calls `f` for every prime `p` with `lo <= p < hi`, in order.
    pub fn for_each_prime(&self, lo: u64, hi: u64, mut f: impl FnMut(u64)) {
        assert!(
            hi <= self.limit + 1,
            "range end {hi} beyond sieve limit {}",
            self.limit
        );
        let mut buf = Vec::new();
        let mut a = lo;
        while a < hi {
            let b = hi.min(a.saturating_add(PRIME_SEGMENT));
            sieve_window(a, b, &self.base, &mut buf, &mut f);
            a = b;
        }
    }

    /// Applies `f` to the primes of each fixed-size block of `[lo, hi)` and
    /// returns the results in block order. Block boundaries do not depend on
    /// the thread count, so reductions over the result are deterministic.
    pub fn map_blocks<T, F>(&self, lo: u64, hi: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&[u64]) -> T + Sync,
    {
        let mut bounds = Vec::new();
        let mut a = lo;
        while a < hi {
            let b = hi.min(a.saturating_add(PRIME_SEGMENT * 4));
            bounds.push((a, b));
            a = b;
        }
        bounds
            .par_iter()
            .map(|&(a, b)| {
                let mut primes = Vec::new();
                self.for_each_prime(a, b, |p| primes.push(p));
                f(&primes)
            })
            .collect()
    }

    /// Number of primes in `[lo, hi)`.
    pub fn count(&self, lo: u64, hi: u64) -> u64 {
        self.map_blocks(lo, hi, |ps| ps.len() as u64)
            .into_iter()
            .sum()
    }

    pub fn primes(&self, lo: u64, hi: u64) -> Vec<u64> {
        let mut out = Vec::new();
        self.for_each_prime(lo, hi, |p| out.push(p));
        out
    }
}

/// `π(x)`.
pub fn prime_pi(x: u64) -> u64 {
    PrimeSieve::new(x).count(0, x + 1)
}
