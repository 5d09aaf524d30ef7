/// Small primes used for trial division ahead of Miller-Rabin.
const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Witnesses that make Miller-Rabin deterministic below 4,759,123,141.
const BASES_32: [u64; 3] = [2, 7, 61];
/// Sinclair's seven witnesses, deterministic for every 64-bit integer.
const BASES_64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

#[inline]
fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    if n <= u32::MAX as u64 {
        a * b % n
    } else {
        ((a as u128 * b as u128) % n as u128) as u64
    }
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// One strong-probable-prime round; `n` odd, `n - 1 = d · 2^s`.
fn is_sprp(n: u64, d: u64, s: u32, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Exact primality for any `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 53 * 53 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let bases: &[u64] = if n < 4_759_123_141 {
        &BASES_32
    } else {
        &BASES_64
    };
    bases.iter().all(|&a| is_sprp(n, d, s, a))
}
