use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{e, EnvelopeRow, ExpSumError, PhaseSpec};
use crate::accum::ComplexSum;
use crate::arith::{mobius, ArithTables};

/// Default ceiling for direct-sum / envelope ratios.
pub const DEFAULT_VDC_CONSTANT: f64 = 10.0;
/// Largest `K·L` for a direct double sum.
pub const TYPE_SUM_LIMIT: u64 = 10_000_000;

/// `f(x) = coeff · x^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialPhase {
    pub coeff: f64,
    pub exponent: f64,
}

impl MonomialPhase {
    /// `f^(j)(x)`.
    pub fn derivative(&self, j: u32, x: f64) -> f64 {
        let falling: f64 = (0..j).map(|i| self.exponent - i as f64).product();
        self.coeff * falling * x.powf(self.exponent - j as f64)
    }

    pub fn value(&self, x: f64) -> f64 {
        self.coeff * x.powf(self.exponent)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VdcOrder {
    /// `Σ e(f(n)) ≪ a λ_2^(1/2) + λ_2^(−1/2)`
    Second,
    /// `Σ e(f(n)) ≪ a λ_3^(1/6) + λ_3^(−1/3)`
    Third,
}

impl VdcOrder {
    pub fn j(&self) -> u32 {
        match self {
            VdcOrder::Second => 2,
            VdcOrder::Third => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VdcReport {
    pub phase: MonomialPhase,
    pub a: u64,
    pub order: VdcOrder,
    pub lambda: f64,
    /// `|Σ_{a<n<=2a} e(f(n))|`
    pub direct: f64,
    pub envelope: f64,
    pub ratio: f64,
    pub constant: f64,
    pub passed: bool,
}

impl VdcReport {
    pub fn row(&self) -> EnvelopeRow {
        EnvelopeRow {
            lemma: format!("vdc-order-{}", self.order.j()),
            params: format!(
                "coeff={} exponent={} a={} lambda={:e}",
                self.phase.coeff, self.phase.exponent, self.a, self.lambda
            ),
            direct_value: self.direct,
            envelope: self.envelope,
            ratio: self.ratio,
        }
    }
}

/// Compares `|Σ_{a<n<=2a} e(f(n))|` with the van der Corput envelope of the
/// given order.
///
/// `λ_j` is the geometric mean of `|f^(j)|` at `a` and `2a`. The family is
/// rejected when `|f^(j)|` strays from `λ_j` by more than a factor 4 on
/// `[a, 2a]` (which includes `f^(j) ≡ 0`).
pub fn vdc_bound_check(
    phase: MonomialPhase,
    a: u64,
    order: VdcOrder,
    constant: f64,
) -> Result<VdcReport, ExpSumError> {
    if a < 1 {
        return Err(ExpSumError::Precondition("need a >= 1".into()));
    }
    let j = order.j();
    let (da, db) = (
        phase.derivative(j, a as f64).abs(),
        phase.derivative(j, 2.0 * a as f64).abs(),
    );
    let lambda = (da * db).sqrt();
    let spread = da.max(db) / lambda;
    if !(lambda > 0.0) || !(spread <= 4.0) {
        return Err(ExpSumError::Precondition(format!(
            "|f^({j})| is not of constant order on [{a}, {}]: endpoint values {da:e}, {db:e}",
            2 * a
        )));
    }
    let mut acc = ComplexSum::default();
    for n in a + 1..=2 * a {
        acc.add(e(frac_of(phase.value(n as f64))));
    }
    let direct = acc.sum().norm();
    let af = a as f64;
    let envelope = match order {
        VdcOrder::Second => af * lambda.sqrt() + lambda.powf(-0.5),
        VdcOrder::Third => af * lambda.powf(1.0 / 6.0) + lambda.powf(-1.0 / 3.0),
    };
    let ratio = direct / envelope;
    Ok(VdcReport {
        phase,
        a,
        order,
        lambda,
        direct,
        envelope,
        ratio,
        constant,
        passed: ratio <= constant,
    })
}

fn frac_of(t: f64) -> f64 {
    t - t.floor()
}

/// Which bilinear sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumKind {
    /// `b_ℓ ∈ {1, log ℓ}`, `K ≪ x^(1/2)`.
    TypeI,
    /// general `|b_ℓ| <= 1`, `x^(1/2) ≪ K ≪ x^(19/25)`.
    TypeII,
}

/// Coefficient sequences for `a_k` and `b_ℓ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Coeffs {
    Ones,
    Log,
    Mobius,
    /// Values for indices `lo+1, lo+2, …` of the dyadic range.
    Custom(Vec<f64>),
}

impl Coeffs {
    fn values(&self, lo: u64, hi: u64) -> Vec<f64> {
        match self {
            Coeffs::Ones => vec![1.0; (hi - lo) as usize],
            Coeffs::Log => (lo + 1..=hi).map(|n| (n as f64).ln()).collect(),
            Coeffs::Mobius => match ArithTables::sieve_segment(lo + 1, hi + 1) {
                Ok(t) => (lo + 1..=hi).map(|n| f64::from(t.mu(n))).collect(),
                Err(_) => (lo + 1..=hi).map(|n| f64::from(mobius(n))).collect(),
            },
            Coeffs::Custom(v) => {
                let mut v = v.clone();
                v.resize((hi - lo) as usize, 0.0);
                v
            }
        }
    }

    fn bounded_by_one(&self) -> bool {
        match self {
            Coeffs::Ones | Coeffs::Mobius => true,
            Coeffs::Log => false,
            Coeffs::Custom(v) => v.iter().all(|x| x.abs() <= 1.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeSumReport {
    pub kind: SumKind,
    pub k: u64,
    pub l: u64,
    /// `x = K·L`
    pub x: u64,
    pub h: i64,
    pub gamma: f64,
    /// `|Σ_{k~K} Σ_{ℓ~L} a_k b_ℓ e(h(kℓ)^γ + m1 kℓ + m2)|`
    pub direct: f64,
    pub value: Complex64,
    /// The bound with `x^ε` dropped.
    pub envelope: f64,
    pub ratio: f64,
}

impl TypeSumReport {
    pub fn row(&self) -> EnvelopeRow {
        EnvelopeRow {
            lemma: match self.kind {
                SumKind::TypeI => "type-I".into(),
                SumKind::TypeII => "type-II".into(),
            },
            params: format!(
                "K={} L={} x={} h={} gamma={}",
                self.k, self.l, self.x, self.h, self.gamma
            ),
            direct_value: self.direct,
            envelope: self.envelope,
            ratio: self.ratio,
        }
    }
}

/// Type I envelope `|h|^(1/6) x^(γ/6+3/4) + |h|^(−1/3) x^(1−γ/3)`; Type II
/// envelope `|h|^(1/4) x^(γ/4+5/8) + |h|^(−1/4) x^(1−γ/4) + x^(22/25) + |h|^(1/6) x^(γ/6+3/4)`.
pub fn type_envelope(kind: SumKind, h: i64, gamma: f64, x: f64) -> f64 {
    let h = (h as f64).abs();
    match kind {
        SumKind::TypeI => {
            h.powf(1.0 / 6.0) * x.powf(gamma / 6.0 + 0.75)
                + h.powf(-1.0 / 3.0) * x.powf(1.0 - gamma / 3.0)
        }
        SumKind::TypeII => {
            h.powf(0.25) * x.powf(gamma / 4.0 + 0.625)
                + h.powf(-0.25) * x.powf(1.0 - gamma / 4.0)
                + x.powf(22.0 / 25.0)
                + h.powf(1.0 / 6.0) * x.powf(gamma / 6.0 + 0.75)
        }
    }
}

/// Direct double sum over `K < k <= 2K`, `L < ℓ <= 2L` next to its envelope.
///
/// The range conditions are checked with `x = KL`: Type I needs `K <= L`
/// (that is `K <= x^(1/2)`); Type II needs `K >= L` and `K^6 <= L^19`
/// (that is `x^(1/2) <= K <= x^(19/25)`).
pub fn type_sum_eval(
    kind: SumKind,
    k: u64,
    l: u64,
    phase: &PhaseSpec,
    a: &Coeffs,
    b: &Coeffs,
) -> Result<TypeSumReport, ExpSumError> {
    if k == 0 || l == 0 || k.saturating_mul(l) > TYPE_SUM_LIMIT {
        return Err(ExpSumError::Precondition(format!(
            "need 1 <= K, L and K·L <= {TYPE_SUM_LIMIT}, got K = {k}, L = {l}"
        )));
    }
    if phase.h == 0 {
        return Err(ExpSumError::Precondition("type sums need h != 0".into()));
    }
    if !a.bounded_by_one() {
        return Err(ExpSumError::Precondition("need |a_k| <= 1".into()));
    }
    match kind {
        SumKind::TypeI => {
            if k > l {
                return Err(ExpSumError::Precondition(format!(
                    "Type I needs K <= x^(1/2), got K = {k}, L = {l}"
                )));
            }
            if !matches!(b, Coeffs::Ones | Coeffs::Log) {
                return Err(ExpSumError::Precondition(
                    "Type I needs b_l = 1 or log l".into(),
                ));
            }
        }
        SumKind::TypeII => {
            let (kf, lf) = (k as f64, l as f64);
            if k < l || 6.0 * kf.ln() > 19.0 * lf.ln() + 1e-9 {
                return Err(ExpSumError::Precondition(format!(
                    "Type II needs x^(1/2) <= K <= x^(19/25), got K = {k}, L = {l}"
                )));
            }
            if !b.bounded_by_one() {
                return Err(ExpSumError::Precondition("Type II needs |b_l| <= 1".into()));
            }
        }
    }
    let av = a.values(k, 2 * k);
    let bv = b.values(l, 2 * l);
    let rows: Vec<ComplexSum> = av
        .par_iter()
        .enumerate()
        .map(|(i, &ak)| {
            let mut acc = ComplexSum::default();
            if ak != 0.0 {
                let kk = k + 1 + i as u64;
                for (j, &bl) in bv.iter().enumerate() {
                    if bl != 0.0 {
                        let n = kk * (l + 1 + j as u64);
                        acc.add(phase.e_at(n) * (ak * bl));
                    }
                }
            }
            acc
        })
        .collect();
    let mut total = ComplexSum::default();
    for r in &rows {
        total.merge(r);
    }
    let value = total.sum();
    let x = k * l;
    let envelope = type_envelope(kind, phase.h, phase.gamma, x as f64);
    Ok(TypeSumReport {
        kind,
        k,
        l,
        x,
        h: phase.h,
        gamma: phase.gamma,
        direct: value.norm(),
        value,
        envelope,
        ratio: value.norm() / envelope,
    })
}

/// Reports over a grid of `h` and `x`. Type I uses `K = ⌊x^(1/3)⌋`, Type II
/// `K = ⌈x^(1/2)⌉`; in both cases `L = ⌊x/K⌋`.
pub fn type_sum_grid(
    kind: SumKind,
    hs: &[i64],
    xs: &[u64],
    gamma: f64,
    a: &Coeffs,
    b: &Coeffs,
) -> Result<Vec<TypeSumReport>, ExpSumError> {
    let mut out = Vec::new();
    for &x in xs {
        let k = match kind {
            SumKind::TypeI => (x as f64).cbrt().floor() as u64,
            SumKind::TypeII => (x as f64).sqrt().ceil() as u64,
        };
        let l = x / k.max(1);
        let (k, l) = match kind {
            SumKind::TypeII => (k.max(l), k.min(l)),
            SumKind::TypeI => (k, l),
        };
        for &h in hs {
            let phase = PhaseSpec::new(h, gamma, 0.0, 0.0);
            out.push(type_sum_eval(kind, k, l, &phase, a, b)?);
        }
    }
    Ok(out)
}
