use super::sieve::{isqrt, small_primes};
use super::ArithError;

/// Default upper bound on `hi - lo` for one table.
pub const DEFAULT_SEGMENT: u64 = 1 << 22;

/// `n = p^k` with `p` prime, `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
}

impl PrimePower {
    /// `Λ(n) = log p`.
    pub fn lambda(&self) -> f64 {
        (self.p as f64).ln()
    }
}

/// Primality, von Mangoldt and Möbius data for every `n` in `[lo, hi)`.
///
/// `Λ` is kept structurally as `(p, k)`; the logarithm is taken where it is
/// used.
#[derive(Clone, Debug)]
pub struct ArithTables {
    lo: u64,
    hi: u64,
    is_prime: Vec<u64>,
    prime_power: Vec<Option<PrimePower>>,
    mu: Vec<i8>,
}

impl ArithTables {
    /// Sieves `[lo, hi)` with the default size cap.
    pub fn sieve_segment(lo: u64, hi: u64) -> Result<Self, ArithError> {
        Self::sieve_segment_with_cap(lo, hi, DEFAULT_SEGMENT)
    }

    /// Sieves `[lo, hi)`; `1 <= lo < hi <= 2^63` and `hi - lo <= cap`.
    ///
    /// `lo = 1` is accepted so that identities involving `μ(1)` can be
    /// checked on a table.
    pub fn sieve_segment_with_cap(lo: u64, hi: u64, cap: u64) -> Result<Self, ArithError> {
        if lo < 1 || lo >= hi || hi > 1 << 63 {
            return Err(ArithError::InvalidRange { lo, hi });
        }
        if hi - lo > cap {
            return Err(ArithError::SegmentTooLarge { len: hi - lo, cap });
        }
        let len = (hi - lo) as usize;
        let mut rem: Vec<u64> = (lo..hi).collect();
        let mut mu = vec![1i8; len];
        let mut first: Vec<Option<PrimePower>> = vec![None; len];
        let mut nfactors = vec![0u8; len];

        for p in small_primes(isqrt(hi - 1)) {
            let mut m = lo.div_ceil(p) * p;
            while m < hi {
                let i = (m - lo) as usize;
                let mut k = 0u32;
                while rem[i] % p == 0 {
                    rem[i] /= p;
                    k += 1;
                }
                if k >= 2 {
                    mu[i] = 0;
                } else {
                    mu[i] = -mu[i];
                }
                nfactors[i] += 1;
                if first[i].is_none() {
                    first[i] = Some(PrimePower { p, k });
                }
                m += p;
            }
        }

        let mut is_prime = vec![0u64; len.div_ceil(64)];
        let mut prime_power = vec![None; len];
        for i in 0..len {
            let n = lo + i as u64;
            if n == 1 {
                continue;
            }
            if rem[i] > 1 {
                // One prime factor above √hi remains.
                mu[i] = -mu[i];
                nfactors[i] += 1;
                if first[i].is_none() {
                    first[i] = Some(PrimePower { p: rem[i], k: 1 });
                }
            }
            if nfactors[i] == 1 {
                let pp = first[i].expect("one factor recorded");
                if pp.k == 1 {
                    is_prime[i / 64] |= 1 << (i % 64);
                }
                prime_power[i] = Some(pp);
            }
        }
        Ok(ArithTables {
            lo,
            hi,
            is_prime,
            prime_power,
            mu,
        })
    }

    pub fn range(&self) -> (u64, u64) {
        (self.lo, self.hi)
    }

    fn index(&self, n: u64) -> usize {
        assert!(
            (self.lo..self.hi).contains(&n),
            "{n} outside table [{}, {})",
            self.lo,
            self.hi
        );
        (n - self.lo) as usize
    }

    pub fn is_prime(&self, n: u64) -> bool {
        let i = self.index(n);
        self.is_prime[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn prime_power(&self, n: u64) -> Option<PrimePower> {
        self.prime_power[self.index(n)]
    }

    /// `Λ(n)`.
    pub fn lambda(&self, n: u64) -> f64 {
        self.prime_power(n).map_or(0.0, |pp| pp.lambda())
    }

    /// `μ(n)`.
    pub fn mu(&self, n: u64) -> i8 {
        self.mu[self.index(n)]
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (self.lo..self.hi).filter(move |&n| self.is_prime(n))
    }
}
