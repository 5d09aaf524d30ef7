//! Beatty sequences `⌊αn + β⌋` and Piatetski-Shapiro sequences `⌊n^c⌋`:
//! exact membership tests and in-order enumeration.
//!
//! Membership uses the characteristic functions
//! `X(m) = ⌊−ω(m−β)⌋ − ⌊−ω(m+1−β)⌋` (with `ω = 1/α`) and
//! `X⁽ᶜ⁾(m) = ⌊−m^γ⌋ − ⌊−(m+1)^γ⌋` (with `γ = 1/c`). Both are decided exactly.

mod beatty;
mod ps;

use thiserror::Error;

use crate::exactnum::ExactError;

pub use beatty::{BeattyEnumerator, BeattySpec};
pub use ps::{PsEnumerator, PsSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("Beatty modulus must exceed 1, got {0}")]
    AlphaTooSmall(String),
    #[error("exponent c = {0} outside (1, 12/11)")]
    ExponentOutOfRange(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Either kind of sequence.
#[derive(Clone, Debug)]
pub enum SequenceSpec {
    Beatty(BeattySpec),
    Ps(PsSpec),
}

impl SequenceSpec {
    /// `1` if `m` is a term of the sequence, else `0`.
    pub fn char(&self, m: u64) -> u8 {
        match self {
            SequenceSpec::Beatty(b) => beatty_char(b, m),
            SequenceSpec::Ps(p) => ps_char(p, m),
        }
    }
}

/// `1` iff `m = ⌊αn + β⌋` for some `n >= 1`.
pub fn beatty_char(spec: &BeattySpec, m: u64) -> u8 {
    u8::from(spec.contains(m))
}

/// Terms `⌊αn + β⌋ <= limit` for `n = 1, 2, …`; terms below 1 are skipped.
pub fn beatty_enumerate(spec: &BeattySpec, limit: u64) -> BeattyEnumerator {
    BeattyEnumerator::new(spec, 1, limit)
}

/// `1` iff `m = ⌊n^c⌋` for some `n >= 1`.
pub fn ps_char(spec: &PsSpec, m: u64) -> u8 {
    u8::from(spec.contains(m))
}

/// Terms `⌊n^c⌋ <= limit` for `n = 1, 2, …`.
pub fn ps_enumerate(spec: &PsSpec, limit: u64) -> PsEnumerator {
    PsEnumerator::new(spec, 1, limit)
}

/// `X(m)` minus its expansion through the sawtooth `ψ(t) = {t} − 1/2`.
///
/// Beatty: `X(m) − (ω + ψ(−ω(m+1−β)) − ψ(−ω(m−β)))`.
/// Piatetski-Shapiro: `X(m) − ((m+1)^γ − m^γ + ψ(−(m+1)^γ) − ψ(−m^γ))`.
/// Both are identities, so the result is rounding noise.
pub fn char_psi_identity_residual(spec: &SequenceSpec, m: u64) -> f64 {
    match spec {
        SequenceSpec::Beatty(b) => {
            let inc = b.psi_increment(m);
            let x = f64::from(inc.x);
            (x - inc.omega) - inc.psi_diff
        }
        SequenceSpec::Ps(p) => {
            let inc = p.psi_increment(m);
            // X − ⌊Δ⌋-part is an exact small integer; subtract the fractional
            // pieces after it.
            (inc.x as f64 - inc.delta_int as f64) - inc.delta_frac - inc.psi_diff
        }
    }
}

/// Residual of the Piatetski-Shapiro expansion with the first-order Taylor
/// term `γ m^(γ−1)` in place of `(m+1)^γ − m^γ`. This is `O(m^(γ−2))`.
pub fn ps_taylor_residual(spec: &PsSpec, m: u64) -> f64 {
    let inc = spec.psi_increment(m);
    let g = spec.gamma().value();
    let taylor = g * (m as f64).powf(g - 1.0);
    let exact_residual = (inc.x as f64 - inc.delta_int as f64) - inc.delta_frac - inc.psi_diff;
    exact_residual + (inc.delta_int as f64 + inc.delta_frac - taylor)
}
