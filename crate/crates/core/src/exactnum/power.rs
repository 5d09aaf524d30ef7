use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::limbs::Limbs;
use super::ExactError;

/// A positive rational exponent `num/den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RationalExponent {
    num: u32,
    den: u32,
}

impl RationalExponent {
    pub fn new(num: u32, den: u32) -> Result<Self, ExactError> {
        if num == 0 || den == 0 {
            return Err(ExactError::InvalidExponent(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(RationalExponent {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u32 {
        self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn recip(&self) -> Self {
        RationalExponent {
            num: self.den,
            den: self.num,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Exact comparison of `num/den` against `a/b`.
    pub fn cmp_ratio(&self, a: u64, b: u64) -> Ordering {
        (self.num as u64 * b).cmp(&(a * self.den as u64))
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalExponent {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExactError::InvalidExponent(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: u32 = n.parse().map_err(|_| bad())?;
        let den: u32 = d.parse().map_err(|_| bad())?;
        RationalExponent::new(num, den)
    }
}

impl TryFrom<String> for RationalExponent {
    type Error = ExactError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<RationalExponent> for String {
    fn from(e: RationalExponent) -> String {
        e.to_string()
    }
}

/// Integer and fractional part of `m^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerParts {
    pub floor: BigUint,
    /// `m^e - floor`, accurate to a few ulps of the fraction itself
    /// (the integer part is cancelled exactly before any rounding).
    pub frac: f64,
    /// `m^e` is an integer.
    pub exact: bool,
}

/// `⌊(m^num)^(1/den)⌋` for arbitrary-precision `m`.
///
/// Newton iteration on big integers, followed by an exact bracketing check
/// `k^den <= m^num < (k+1)^den`.
pub fn floor_rational_power(m: &BigUint, e: RationalExponent) -> BigUint {
    let target = Pow::pow(m, e.num);
    let mut k = target.nth_root(e.den);
    while (&k).pow(e.den) > target {
        k -= 1u32;
    }
    loop {
        let next = &k + 1u32;
        if next.pow(e.den) <= target {
            k = &k + 1u32;
        } else {
            break;
        }
    }
    k
}

/// Word-sized variant of [`floor_rational_power`]. Returns `(k, exact)` with
/// `k = ⌊m^e⌋` and `exact` iff `k^den == m^num`; `None` when `k` does not fit
/// in a `u64`.
///
/// The starting point comes from `f64`, but only as a seed: the answer is
/// fixed by the exact comparisons `k^den <= m^num < (k+1)^den` on stack limbs.
pub fn floor_rational_power_u64(m: u64, e: RationalExponent) -> Option<(u64, bool)> {
    if m <= 1 {
        return Some((m, true));
    }
    if let Some(k) = certified_floor_f64(m, e) {
        return Some((k, false));
    }
    let target = match Limbs::pow(m, e.num) {
        Some(t) => t,
        None => return slow_floor_u64(m, e),
    };
    let seed = (m as f64).powf(e.value());
    if !seed.is_finite() || seed >= 1.8e19 {
        return slow_floor_u64(m, e);
    }
    let mut k = seed as u64;
    loop {
        let Some(kp) = Limbs::pow(k, e.den) else {
            return slow_floor_u64(m, e);
        };
        match kp.cmp(&target) {
            Ordering::Greater => k -= 1,
            Ordering::Equal => return Some((k, true)),
            Ordering::Less => break,
        }
    }
    loop {
        let next = k.checked_add(1)?;
        let Some(np) = Limbs::pow(next, e.den) else {
            return slow_floor_u64(m, e);
        };
        match np.cmp(&target) {
            Ordering::Greater => return Some((k, false)),
            Ordering::Equal => return Some((next, true)),
            Ordering::Less => k = next,
        }
    }
}

/// `x^e` by `e - 1` sequential multiplications. For `x < 2^53` the result
/// is within a relative `(e-1)·2^-53·(1 + 2^-40)` of the true value when it
/// stays in the normal range (each IEEE product is correctly rounded).
#[inline]
fn pow_f64(x: f64, e: u32) -> f64 {
    let mut acc = x;
    for _ in 1..e {
        acc *= x;
    }
    acc
}

/// `⌊m^e⌋` when plain floating-point products settle the bracket
/// `k^den < m^num < (k+1)^den` beyond their rounding error; `None` when they
/// do not (near-integer powers, exact powers, huge inputs).
#[inline]
fn certified_floor_f64(m: u64, e: RationalExponent) -> Option<u64> {
    const SAFE: f64 = 9.007_199_254_740_992e15; // 2^53
    let mf = m as f64;
    let y = mf.powf(e.value());
    if !(1.0..SAFE - 2.0).contains(&y) || mf >= SAFE {
        return None;
    }
    let k = y as u64;
    let kf = k as f64;
    let target = pow_f64(mf, e.num);
    let lo = pow_f64(kf, e.den);
    let hi = pow_f64(kf + 1.0, e.den);
    if !(hi < 1e300) {
        return None;
    }
    // Relative error of each computed power is below (e-1)·2^-53 < e·2^-52;
    // 1e-300 keeps clear of subnormals.
    let eps = f64::from(e.num.max(e.den)) * f64::EPSILON;
    let certain =
        lo * (1.0 + eps) < target * (1.0 - eps) && target * (1.0 + eps) < hi * (1.0 - eps);
    certain.then_some(k)
}

fn slow_floor_u64(m: u64, e: RationalExponent) -> Option<(u64, bool)> {
    let mb = BigUint::from(m);
    let k = floor_rational_power(&mb, e);
    let exact = (&k).pow(e.den) == (&mb).pow(e.num);
    k.to_u64().map(|k| (k, exact))
}

/// `⌈m^e⌉` for word-sized inputs.
pub fn ceil_rational_power_u64(m: u64, e: RationalExponent) -> Option<u64> {
    let (k, exact) = floor_rational_power_u64(m, e)?;
    if exact {
        Some(k)
    } else {
        k.checked_add(1)
    }
}

/// Splits `m^e` into its exact integer part and an accurately rounded
/// fractional part.
///
/// With `M = m^num`, `k = ⌊M^(1/den)⌋` and `y = M^(1/den)`:
/// `y - k = (M - k^den) / Σ_{i<den} y^i k^(den-1-i)`. The numerator is an exact
/// integer; the denominator only needs relative accuracy, so `f64` suffices.
pub fn rational_power_parts(m: u64, e: RationalExponent) -> PowerParts {
    let mb = BigUint::from(m);
    let target = (&mb).pow(e.num);
    let k = floor_rational_power(&mb, e);
    let kpow = (&k).pow(e.den);
    if kpow == target {
        return PowerParts {
            floor: k,
            frac: 0.0,
            exact: true,
        };
    }
    let diff = &target - &kpow;
    let frac = if k.is_zero() {
        // Only reachable for m = 0, which is exact; kept for totality.
        (m as f64).powf(e.value())
    } else {
        let kd = big_to_f64(&k);
        let approx = (m as f64).powf(e.value());
        let u = ((approx - kd) / kd).clamp(0.0, 1.0 / kd);
        let den = e.den as i32;
        // Σ_{i<den} (1+u)^i, summed from the small end.
        let mut s = 0.0f64;
        let mut term = 1.0f64;
        for _ in 0..den {
            s += term;
            term *= 1.0 + u;
        }
        let ratio = big_ratio_f64(&diff, &(&k).pow(e.den - 1));
        ratio / s
    };
    PowerParts {
        floor: k,
        frac: frac.clamp(0.0, 1.0 - f64::EPSILON / 2.0),
        exact: false,
    }
}

/// `a / b` rounded to `f64` without overflowing intermediate conversions.
pub(crate) fn big_ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    let (ma, ea) = top_bits(a);
    let (mb, eb) = top_bits(b);
    (ma / mb) * 2f64.powi((ea - eb) as i32)
}

/// `(mantissa, exponent)` with `x ≈ mantissa * 2^exponent` and 64 leading bits kept.
fn top_bits(x: &BigUint) -> (f64, i64) {
    let bits = x.bits() as i64;
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64, 0);
    }
    let shift = bits - 64;
    let top: BigUint = x >> (shift as usize);
    (top.to_u64().unwrap() as f64, shift)
}

pub(crate) fn big_to_f64(x: &BigUint) -> f64 {
    let (m, e) = top_bits(x);
    m * 2f64.powi(e as i32)
}
