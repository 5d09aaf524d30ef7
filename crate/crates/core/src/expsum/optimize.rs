use serde::{Deserialize, Serialize};

use super::ExpSumError;

/// `L(Q) = Σ A_i Q^(a_i) + Σ B_j Q^(−b_j)` with positive `A_i, a_i, B_j, b_j`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    /// `(A_i, a_i)`
    pub growing: Vec<(f64, f64)>,
    /// `(B_j, b_j)`
    pub decaying: Vec<(f64, f64)>,
}

/// Chosen parameter and the envelope there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QChoice {
    pub q: f64,
    pub value: f64,
    /// `Σ A_i Q1^(a_i) + Σ B_j Q2^(−b_j) + Σ_{i,j} (A_i^(b_j) B_j^(a_i))^(1/(a_i+b_j))`,
    /// the bound that some `Q` in `[Q1, Q2]` is guaranteed to meet up to a
    /// constant depending only on the number of terms.
    pub balanced_bound: f64,
}

impl Envelope {
    pub fn new(growing: Vec<(f64, f64)>, decaying: Vec<(f64, f64)>) -> Self {
        Envelope { growing, decaying }
    }

    pub fn value(&self, q: f64) -> f64 {
        self.growing
            .iter()
            .map(|&(a, e)| a * q.powf(e))
            .sum::<f64>()
            + self
                .decaying
                .iter()
                .map(|&(b, e)| b * q.powf(-e))
                .sum::<f64>()
    }

    fn balanced_bound(&self, q1: f64, q2: f64) -> f64 {
        let ends = self
            .growing
            .iter()
            .map(|&(a, e)| a * q1.powf(e))
            .sum::<f64>()
            + self
                .decaying
                .iter()
                .map(|&(b, e)| if q2.is_finite() { b * q2.powf(-e) } else { 0.0 })
                .sum::<f64>();
        let mut cross = 0.0;
        for &(a, ea) in &self.growing {
            for &(b, eb) in &self.decaying {
                // (A^b B^a)^(1/(a+b)), in logs to avoid overflow
                cross += ((eb * a.ln() + ea * b.ln()) / (ea + eb)).exp();
            }
        }
        ends + cross
    }

    fn valid(&self) -> bool {
        self.growing
            .iter()
            .chain(&self.decaying)
            .all(|&(c, e)| c > 0.0 && e > 0.0 && c.is_finite() && e.is_finite())
    }
}

/// Minimizes `L` over `[Q1, Q2]` (`Q2` may be infinite).
///
/// `L(e^u)` is a sum of exponentials in `u`, hence convex, so a
/// golden-section search in `log Q` finds the minimum.
pub fn optimal_q_select(env: &Envelope, q1: f64, q2: f64) -> Result<QChoice, ExpSumError> {
    if env.growing.is_empty() && env.decaying.is_empty() {
        return Err(ExpSumError::EmptyEnvelope);
    }
    if !env.valid() {
        return Err(ExpSumError::Precondition(
            "envelope coefficients and exponents must be positive".into(),
        ));
    }
    if !(q1 > 0.0) || !(q1 <= q2) {
        return Err(ExpSumError::Precondition(format!(
            "need 0 < Q1 <= Q2, got [{q1}, {q2}]"
        )));
    }
    let f = |u: f64| env.value(u.exp());
    let lo = q1.ln();
    let mut hi = q2.ln();
    if !hi.is_finite() {
        // Walk right until L increases; by convexity the minimum is behind us.
        hi = lo + 1.0;
        while f(hi) < f(hi - 1.0) && hi < 700.0 {
            hi += (hi - lo).max(1.0);
        }
        hi = hi.min(700.0);
    }
    let (mut a, mut b) = (lo, hi);
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() < 1e-12 * (1.0 + a.abs()) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let mut best = ((a + b) / 2.0, f((a + b) / 2.0));
    for u in [lo, hi] {
        let v = f(u);
        if v < best.1 {
            best = (u, v);
        }
    }
    let q = best.0.exp().clamp(q1, q2);
    Ok(QChoice {
        q,
        value: env.value(q),
        balanced_bound: env.balanced_bound(q1, q2),
    })
}
