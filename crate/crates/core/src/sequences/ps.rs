use std::fmt;

use num_traits::ToPrimitive;

use super::SequenceError;
use crate::exactnum::{
    ceil_rational_power_u64, floor_rational_power_u64, rational_power_parts, RationalExponent,
};

/// `N⁽ᶜ⁾ = (⌊n^c⌋)_{n>=1}` for a rational exponent `c > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsSpec {
    c: RationalExponent,
    gamma: RationalExponent,
}

/// Pieces of `X⁽ᶜ⁾(m) = (m+1)^γ − m^γ + ψ(−(m+1)^γ) − ψ(−m^γ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsIncrement {
    /// `⌈(m+1)^γ⌉ − ⌈m^γ⌉`, exact.
    pub x: u8,
    /// `⌊(m+1)^γ⌋ − ⌊m^γ⌋`, exact.
    pub delta_int: i64,
    /// `{(m+1)^γ} − {m^γ}`; together with `delta_int` gives `Δ(m) = (m+1)^γ − m^γ`.
    pub delta_frac: f64,
    /// `ψ(−(m+1)^γ) − ψ(−m^γ)`.
    pub psi_diff: f64,
}

impl PsIncrement {
    /// `Δ(m) = (m+1)^γ − m^γ`.
    pub fn delta(&self) -> f64 {
        self.delta_int as f64 + self.delta_frac
    }
}

impl PsSpec {
    /// Strict constructor: `1 < c < 12/11`.
    pub fn new(c: RationalExponent) -> Result<Self, SequenceError> {
        if c.cmp_ratio(1, 1).is_le() || c.cmp_ratio(12, 11).is_ge() {
            return Err(SequenceError::ExponentOutOfRange(c.to_string()));
        }
        Ok(Self::unchecked(c))
    }

    /// Accepts any `c > 1`, logging a warning outside `(1, 12/11)`.
    pub fn lenient(c: RationalExponent) -> Result<Self, SequenceError> {
        if c.cmp_ratio(1, 1).is_le() {
            return Err(SequenceError::ExponentOutOfRange(c.to_string()));
        }
        if c.cmp_ratio(12, 11).is_ge() {
            log::warn!("exponent c = {c} is outside (1, 12/11); counts are computed but no asymptotic is claimed");
        }
        Ok(Self::unchecked(c))
    }

    fn unchecked(c: RationalExponent) -> Self {
        PsSpec {
            c,
            gamma: c.recip(),
        }
    }

    pub fn c(&self) -> RationalExponent {
        self.c
    }

    /// `γ = 1/c`.
    pub fn gamma(&self) -> RationalExponent {
        self.gamma
    }

    /// `⌊n^c⌋`, or `None` past `u64`.
    #[inline]
    pub fn term(&self, n: u64) -> Option<u64> {
        floor_rational_power_u64(n, self.c).map(|(k, _)| k)
    }

    /// `X⁽ᶜ⁾(m) = ⌈(m+1)^γ⌉ − ⌈m^γ⌉`, the number of `n` with `m <= n^c < m+1`.
    #[inline]
    pub fn contains(&self, m: u64) -> bool {
        let a = ceil_rational_power_u64(m, self.gamma).expect("m^γ < m");
        let b = ceil_rational_power_u64(m + 1, self.gamma).expect("(m+1)^γ <= m+1");
        b - a == 1
    }

    /// Smallest `n >= 1` with `⌊n^c⌋ >= lo`, i.e. `⌈lo^γ⌉`.
    pub fn first_index_at_least(&self, lo: u64) -> u64 {
        ceil_rational_power_u64(lo, self.gamma)
            .expect("lo^γ <= lo")
            .max(1)
    }

    /// Number of terms `<= x`: `⌊(x+1)^γ⌋` when `(x+1)^γ` is not an integer,
    /// one less when it is.
    pub fn count_terms_upto(&self, x: u64) -> u64 {
        ceil_rational_power_u64(x + 1, self.gamma).expect("fits") - 1
    }

    pub fn psi_increment(&self, m: u64) -> PsIncrement {
        let a = rational_power_parts(m, self.gamma);
        let b = rational_power_parts(m + 1, self.gamma);
        let ka = a.floor.to_i64().expect("m^γ fits");
        let kb = b.floor.to_i64().expect("(m+1)^γ fits");
        let ceil_a = ka + i64::from(!a.exact);
        let ceil_b = kb + i64::from(!b.exact);
        // {−y} = 0 for integer y, else 1 − {y}.
        let neg_frac = |exact: bool, f: f64| if exact { 0.0 } else { 1.0 - f };
        PsIncrement {
            x: (ceil_b - ceil_a) as u8,
            delta_int: kb - ka,
            delta_frac: b.frac - a.frac,
            psi_diff: neg_frac(b.exact, b.frac) - neg_frac(a.exact, a.frac),
        }
    }
}

impl fmt::Display for PsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "floor(n^({}))", self.c)
    }
}

/// In-order terms `⌊n^c⌋` in `[lo, limit]`.
#[derive(Clone, Debug)]
pub struct PsEnumerator {
    spec: PsSpec,
    n: u64,
    limit: u64,
}

impl PsEnumerator {
    pub fn new(spec: &PsSpec, lo: u64, limit: u64) -> Self {
        PsEnumerator {
            spec: *spec,
            n: spec.first_index_at_least(lo.max(1)),
            limit,
        }
    }

    pub fn next_index(&self) -> u64 {
        self.n
    }
}

impl Iterator for PsEnumerator {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        let v = self.spec.term(self.n)?;
        if v > self.limit {
            return None;
        }
        self.n += 1;
        Some(v)
    }
}
