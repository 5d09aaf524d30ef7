use std::fmt;

use num_traits::ToPrimitive;

use super::SequenceError;
use crate::exactnum::{compare_surd, QuadraticSurd, SurdLine};

/// `B_{α,β} = (⌊αn + β⌋)_{n>=1}` with exact `α > 1` and `β`.
#[derive(Clone, Debug)]
pub struct BeattySpec {
    alpha: QuadraticSurd,
    beta: QuadraticSurd,
    omega: QuadraticSurd,
    omega_f64: f64,
    /// `m ↦ ⌊−ω(m − β)⌋`
    neg_scaled: SurdLine,
    /// `n ↦ ⌊αn + β⌋`
    terms: SurdLine,
}

/// Pieces of `X(m) = ω + ψ(−ω(m+1−β)) − ψ(−ω(m−β))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeattyIncrement {
    /// `⌊−ω(m−β)⌋ − ⌊−ω(m+1−β)⌋`, exact.
    pub x: u8,
    pub omega: f64,
    /// `ψ(−ω(m+1−β)) − ψ(−ω(m−β))`.
    pub psi_diff: f64,
}

impl BeattySpec {
    /// `α` must exceed 1 and share a quadratic field with `β`. A rational `α`
    /// is accepted with a warning.
    pub fn new(alpha: QuadraticSurd, beta: QuadraticSurd) -> Result<Self, SequenceError> {
        if compare_surd(&alpha, &QuadraticSurd::integer(1))?.is_le() {
            return Err(SequenceError::AlphaTooSmall(alpha.to_string()));
        }
        if alpha.is_rational() {
            log::warn!("Beatty modulus {alpha} is rational; density results assume irrational α");
        }
        let omega = alpha.recip()?;
        debug_assert!(omega
            .try_mul(&alpha)
            .map(|v| v == QuadraticSurd::integer(1))
            .unwrap_or(false));
        let neg_omega = -omega.clone();
        let neg_scaled = SurdLine::new(&neg_omega, &omega.try_mul(&beta)?)?;
        let terms = SurdLine::new(&alpha, &beta)?;
        Ok(BeattySpec {
            omega_f64: omega.to_f64(),
            alpha,
            beta,
            omega,
            neg_scaled,
            terms,
        })
    }

    /// Parses `α` and `β` from expressions such as `sqrt(2)` and `3/10`.
    pub fn parse(alpha: &str, beta: &str) -> Result<Self, SequenceError> {
        Self::new(alpha.parse()?, beta.parse()?)
    }

    pub fn alpha(&self) -> &QuadraticSurd {
        &self.alpha
    }
    pub fn beta(&self) -> &QuadraticSurd {
        &self.beta
    }
    /// `ω = 1/α`, exact.
    pub fn omega(&self) -> &QuadraticSurd {
        &self.omega
    }
    pub fn omega_f64(&self) -> f64 {
        self.omega_f64
    }

    #[inline]
    fn f(&self, m: u64) -> i128 {
        self.neg_scaled
            .floor_i128(m as i64)
            .expect("floor of a 64-bit Beatty argument fits in i128")
    }

    /// `⌊αn + β⌋`.
    #[inline]
    pub fn term(&self, n: u64) -> i128 {
        self.terms
            .floor_i128(n as i64)
            .expect("Beatty term fits in i128")
    }

    /// `X(m) = ⌊−ω(m−β)⌋ − ⌊−ω(m+1−β)⌋`: 1 iff `m = ⌊αn + β⌋` for some integer
    /// `n`, which is then `⌈ω(m−β)⌉`.
    pub fn raw_char(&self, m: u64) -> u8 {
        (self.f(m) - self.f(m + 1)) as u8
    }

    /// Membership with the index restricted to `n >= 1`.
    #[inline]
    pub fn contains(&self, m: u64) -> bool {
        let fm = self.f(m);
        fm - self.f(m + 1) == 1 && fm <= -1
    }

    /// Index `n` with `⌊αn + β⌋ = m`, if any.
    pub fn index_of(&self, m: u64) -> Option<u64> {
        let fm = self.f(m);
        (fm - self.f(m + 1) == 1 && fm <= -1).then(|| (-fm) as u64)
    }

    /// Smallest `n >= 1` with `⌊αn + β⌋ >= lo`.
    pub fn first_index_at_least(&self, lo: u64) -> u64 {
        // ⌊αn+β⌋ >= lo  ⇔  αn+β >= lo  ⇔  n >= ω(lo−β)  ⇔  n >= −F(lo).
        let n = -self.f(lo);
        n.max(1) as u64
    }

    pub fn psi_increment(&self, m: u64) -> BeattyIncrement {
        let (fa, ra) = self.neg_scaled.at(m as i64).floor_frac();
        let (fb, rb) = self.neg_scaled.at(m as i64 + 1).floor_frac();
        BeattyIncrement {
            x: (fa - fb).to_u8().expect("X ∈ {0, 1}"),
            omega: self.omega_f64,
            psi_diff: rb - ra,
        }
    }

    /// `α` as `f64`.
    pub fn alpha_f64(&self) -> f64 {
        self.alpha.to_f64()
    }

    pub fn is_rational(&self) -> bool {
        self.alpha.is_rational()
    }
}

impl fmt::Display for BeattySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "floor({}*n + {})", self.alpha, self.beta)
    }
}

/// In-order terms `⌊αn + β⌋` in `[lo, limit]`.
///
/// Holds its own position; build one per thread for range-partitioned work.
#[derive(Clone, Debug)]
pub struct BeattyEnumerator {
    terms: SurdLine,
    n: u64,
    limit: u64,
}

impl BeattyEnumerator {
    pub fn new(spec: &BeattySpec, lo: u64, limit: u64) -> Self {
        BeattyEnumerator {
            terms: spec.terms.clone(),
            n: spec.first_index_at_least(lo.max(1)),
            limit,
        }
    }

    /// Index of the next term to be produced.
    pub fn next_index(&self) -> u64 {
        self.n
    }
}

impl Iterator for BeattyEnumerator {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let v = self.terms.floor_i128(self.n as i64)?;
        if v > self.limit as i128 {
            return None;
        }
        self.n += 1;
        Some(v as u64)
    }
}
