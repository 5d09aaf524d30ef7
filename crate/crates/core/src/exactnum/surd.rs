use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::power::{big_ratio_f64, big_to_f64};
use super::ExactError;

/// An exact real `(p + q·√d) / r` with `d` square-free.
///
/// Rationals are stored with `q = 0, d = 0`. After construction the fields are
/// normalized (`r > 0`, `gcd(p, q, r) = 1`, square factors of `d` moved into
/// `q`), so structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: u64,
    r: BigInt,
}

impl QuadraticSurd {
    pub fn new(p: BigInt, q: BigInt, d: u64, r: BigInt) -> Result<Self, ExactError> {
        if r.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        let (s, core) = split_square(d);
        let mut p = p;
        let mut q = q * BigInt::from(s);
        let mut d = core;
        if d == 1 {
            p += &q;
            q = BigInt::zero();
        }
        if q.is_zero() {
            d = 0;
        }
        let mut r = r;
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        Ok(QuadraticSurd { p, q, d, r })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        QuadraticSurd {
            p: n.into(),
            q: BigInt::zero(),
            d: 0,
            r: BigInt::one(),
        }
    }

    pub fn rational(p: impl Into<BigInt>, r: impl Into<BigInt>) -> Result<Self, ExactError> {
        Self::new(p.into(), BigInt::zero(), 0, r.into())
    }

    /// `√n`, reduced (so `sqrt(8)` is `2√2` and `sqrt(9)` is `3`).
    pub fn sqrt(n: u64) -> Self {
        Self::new(BigInt::zero(), BigInt::one(), n, BigInt::one()).expect("r = 1")
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn d(&self) -> u64 {
        self.d
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.r.is_one()
    }

    /// Radicand shared by `self` and `other`, or an error if they live in
    /// different quadratic fields.
    fn common_d(&self, other: &Self) -> Result<u64, ExactError> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(ExactError::IncompatibleRadicands(a, b)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_d(other)?;
        Self::new(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            d,
            &self.r * &other.r,
        )
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_d(other)?;
        let dd = BigInt::from(d);
        Self::new(
            &self.p * &other.p + &self.q * &other.q * dd,
            &self.p * &other.q + &self.q * &other.p,
            d,
            &self.r * &other.r,
        )
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_mul(&other.recip()?)
    }

    /// Multiplicative inverse: `r (p - q√d) / (p² - q² d)`.
    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let norm = &self.p * &self.p - &self.q * &self.q * BigInt::from(self.d);
        // norm != 0 because d is square-free and not 1 when q != 0.
        Self::new(&self.r * &self.p, -(&self.r * &self.q), self.d, norm)
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        Self::new(&self.p * n, &self.q * n, self.d, self.r.clone()).expect("r unchanged")
    }

    /// Sign of the value, decided by integer comparisons only.
    pub fn signum(&self) -> Ordering {
        sign_of(&self.p, &self.q, self.d)
    }

    /// `⌊self⌋`, exact.
    ///
    /// Uses `⌊x / r⌋ = ⌊⌊x⌋ / r⌋` for integer `r > 0`, so only `⌊q√d⌋` needs a
    /// square root, which is an integer square root of `q² d`.
    pub fn floor(&self) -> BigInt {
        let fq = floor_q_sqrt_d(&self.q, self.d);
        (&self.p + fq).div_floor(&self.r)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self.clone()).floor()
    }

    /// `(⌊self⌋, {self})` where the fractional part is computed after the
    /// integer part has been cancelled exactly, so its absolute error is a few
    /// ulps of a number in `[0, 1)` regardless of the magnitude of `self`.
    pub fn floor_frac(&self) -> (BigInt, f64) {
        let (fq, phi) = q_sqrt_d_parts(&self.q, self.d);
        let whole = &self.p + &fq;
        let (fl, rem) = whole.div_mod_floor(&self.r);
        // rem in [0, r); value - fl = (rem + phi) / r.
        let frac = if self.r.is_one() {
            phi
        } else {
            let r_f = big_to_f64(self.r.magnitude());
            let rem_f = big_ratio_f64(rem.magnitude(), self.r.magnitude());
            rem_f + phi / r_f
        };
        (fl, frac.clamp(0.0, 1.0 - f64::EPSILON / 2.0))
    }

    /// Distance to the nearest integer, `‖self‖`, with the same accuracy as
    /// [`floor_frac`](Self::floor_frac).
    pub fn dist_to_int(&self) -> f64 {
        let (_, f) = self.floor_frac();
        f.min(1.0 - f)
    }

    pub fn to_f64(&self) -> f64 {
        if self.signum() == Ordering::Less {
            // keeps relative accuracy for values just below zero
            return -(-self.clone()).to_f64();
        }
        let (fl, frac) = self.floor_frac();
        fl.to_f64().unwrap_or(f64::NAN) + frac
    }
}

impl Neg for QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> Self {
        QuadraticSurd {
            p: -self.p,
            q: -self.q,
            d: self.d,
            r: self.r,
        }
    }
}

/// Exact order between two surds over the same field (or rationals).
pub fn compare_surd(a: &QuadraticSurd, b: &QuadraticSurd) -> Result<Ordering, ExactError> {
    Ok(a.try_sub(b)?.signum())
}

/// `⌊s·n + t⌋` for surds `s`, `t` sharing a field.
pub fn floor_surd_linear(
    s: &QuadraticSurd,
    n: &BigInt,
    t: &QuadraticSurd,
) -> Result<BigInt, ExactError> {
    Ok(s.mul_int(n).try_add(t)?.floor())
}

/// `n ↦ ⌊s·n + t⌋` for fixed surds `s`, `t` over one field, prepared for
/// repeated evaluation.
///
/// The value is kept as `(P0 + P1·n + (Q0 + Q1·n)·√d) / R`. Evaluation runs on
/// `i128` with checked arithmetic and drops to `BigInt` only on overflow; both
/// paths are exact.
#[derive(Clone, Debug)]
pub struct SurdLine {
    p0: BigInt,
    p1: BigInt,
    q0: BigInt,
    q1: BigInt,
    d: u64,
    r: BigInt,
    small: Option<[i128; 5]>,
}

impl SurdLine {
    pub fn new(s: &QuadraticSurd, t: &QuadraticSurd) -> Result<Self, ExactError> {
        let d = s.common_d(t)?;
        let p0 = &t.p * &s.r;
        let p1 = &s.p * &t.r;
        let q0 = &t.q * &s.r;
        let q1 = &s.q * &t.r;
        let r = &s.r * &t.r;
        let small = (|| {
            Some([
                p0.to_i128()?,
                p1.to_i128()?,
                q0.to_i128()?,
                q1.to_i128()?,
                r.to_i128()?,
            ])
        })();
        Ok(SurdLine {
            p0,
            p1,
            q0,
            q1,
            d,
            r,
            small,
        })
    }

    /// The value `s·n + t` as a surd.
    pub fn at(&self, n: i64) -> QuadraticSurd {
        let n = BigInt::from(n);
        QuadraticSurd::new(
            &self.p0 + &self.p1 * &n,
            &self.q0 + &self.q1 * &n,
            self.d,
            self.r.clone(),
        )
        .expect("r > 0")
    }

    #[inline]
    fn floor_small(&self, n: i64) -> Option<i128> {
        let [p0, p1, q0, q1, r] = self.small?;
        let n = n as i128;
        let p = p1.checked_mul(n)?.checked_add(p0)?;
        let q = q1.checked_mul(n)?.checked_add(q0)?;
        let fq = if q == 0 || self.d == 0 {
            0
        } else {
            let qa = q.unsigned_abs();
            let nn = qa.checked_mul(qa)?.checked_mul(self.d as u128)?;
            let s = isqrt_u128(nn);
            let s_i = i128::try_from(s).ok()?;
            if q > 0 {
                s_i
            } else if s * s == nn {
                -s_i
            } else {
                -s_i - 1
            }
        };
        let num = p.checked_add(fq)?;
        // 128-bit division is a library call; most values fit in 64 bits.
        match (i64::try_from(num), i64::try_from(r)) {
            (Ok(a), Ok(b)) => Some(i128::from(a.div_euclid(b))),
            _ => Some(num.div_euclid(r)),
        }
    }

    /// `⌊s·n + t⌋` as an `i128` when it fits (always, for the ranges used in
    /// counting), else `None`.
    #[inline]
    pub fn floor_i128(&self, n: i64) -> Option<i128> {
        self.floor_small(n).or_else(|| self.at(n).floor().to_i128())
    }

    pub fn floor(&self, n: i64) -> BigInt {
        match self.floor_small(n) {
            Some(v) => BigInt::from(v),
            None => self.at(n).floor(),
        }
    }
}

/// `⌊√n⌋` seeded from `f64` and corrected with exact comparisons.
#[inline]
fn isqrt_u128(n: u128) -> u128 {
    if n >= 1 << 104 {
        return n.isqrt();
    }
    // Seed is within a few units of the root below 2^52.
    let mut s = (n as f64).sqrt() as u128;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

/// `(s, core)` with `d = s² · core` and `core` square-free.
fn split_square(d: u64) -> (u64, u64) {
    if d <= 1 {
        return (1, d);
    }
    let mut s = 1u64;
    let mut core = d;
    let mut f = 2u64;
    while f * f <= core {
        let sq = f * f;
        while core % sq == 0 {
            core /= sq;
            s *= f;
        }
        f += 1;
    }
    (s, core)
}

fn sign_of(p: &BigInt, q: &BigInt, d: u64) -> Ordering {
    let sp = p.sign();
    let sq = if d == 0 { Sign::NoSign } else { q.sign() };
    let ord = |s: Sign| match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    };
    match (sp, sq) {
        (s, Sign::NoSign) => ord(s),
        (Sign::NoSign, s) => ord(s),
        (a, b) if a == b => ord(a),
        _ => {
            // Opposite signs: compare p² with q² d.
            let p2 = p * p;
            let q2d = q * q * BigInt::from(d);
            match p2.cmp(&q2d) {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => ord(sp),
                Ordering::Less => ord(sq),
            }
        }
    }
}

/// `⌊q √d⌋`.
fn floor_q_sqrt_d(q: &BigInt, d: u64) -> BigInt {
    if q.is_zero() || d == 0 {
        return BigInt::zero();
    }
    let n: BigUint = q.magnitude() * q.magnitude() * BigUint::from(d);
    let s = n.sqrt();
    let exact = &s * &s == n;
    let s = BigInt::from(s);
    if q.is_positive() {
        s
    } else if exact {
        -s
    } else {
        -s - 1
    }
}

/// `(⌊q √d⌋, {q √d})` with the fraction evaluated as
/// `(n - s²) / (√n + s)` so no large quantity is rounded.
fn q_sqrt_d_parts(q: &BigInt, d: u64) -> (BigInt, f64) {
    if q.is_zero() || d == 0 {
        return (BigInt::zero(), 0.0);
    }
    let n: BigUint = q.magnitude() * q.magnitude() * BigUint::from(d);
    let s = n.sqrt();
    let gap = &n - &s * &s;
    if gap.is_zero() {
        let s = BigInt::from(s);
        return (if q.is_positive() { s } else { -s }, 0.0);
    }
    let s_f = big_to_f64(&s);
    let n_f = big_to_f64(&n);
    let up = big_to_f64(&gap) / (n_f.sqrt() + s_f);
    let s = BigInt::from(s);
    if q.is_positive() {
        (s, up)
    } else {
        (-s - 1, 1.0 - up)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return if self.r.is_one() {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.r)
            };
        }
        let radical = if self.q.is_one() {
            format!("sqrt({})", self.d)
        } else if self.q == -BigInt::one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.q, self.d)
        };
        let numer = if self.p.is_zero() {
            radical
        } else if radical.starts_with('-') {
            format!("{}{}", self.p, radical)
        } else {
            format!("{}+{}", self.p, radical)
        };
        if self.r.is_one() {
            write!(f, "{numer}")
        } else if self.p.is_zero() && !numer.starts_with('-') {
            write!(f, "{numer}/{}", self.r)
        } else {
            write!(f, "({numer})/{}", self.r)
        }
    }
}


#[cfg(test)]
mod line_tests {
    use super::*;
    use proptest::prelude::*;

    fn s(x: &str) -> QuadraticSurd {
        x.parse().unwrap()
    }

    proptest! {
        #[test]
        fn fast_path_matches_bigint(n in -1_000_000_000_000i64..1_000_000_000_000i64, k in 0usize..5) {
            let cases = [
                ("sqrt(2)", "0"),
                ("-sqrt(2)/2", "3*sqrt(2)/20"),
                ("(1+sqrt(5))/2", "-7/3"),
                ("3/2", "1/2"),
                ("-(5-sqrt(3))/7", "sqrt(3)/11 + 1/13"),
            ];
            let (a, b) = cases[k];
            let line = SurdLine::new(&s(a), &s(b)).unwrap();
            let slow = floor_surd_linear(&s(a), &BigInt::from(n), &s(b)).unwrap();
            prop_assert_eq!(line.floor(n), slow.clone());
            // round trip: k <= s n + t < k + 1
            let v = line.at(n);
            let k0 = QuadraticSurd::integer(slow.clone());
            let k1 = QuadraticSurd::integer(slow + 1);
            prop_assert_ne!(compare_surd(&k0, &v).unwrap(), Ordering::Greater);
            prop_assert_eq!(compare_surd(&v, &k1).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn overflow_falls_back() {
        let line = SurdLine::new(&s("sqrt(2)").mul_int(&BigInt::from(u64::MAX)), &s("0")).unwrap();
        let n = i64::MAX;
        assert_eq!(line.floor(n), line.at(n).floor());
    }
}
