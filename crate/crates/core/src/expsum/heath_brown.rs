use crate::accum::Neumaier;
use crate::arith::{mobius, von_mangoldt};

use super::ExpSumError;

/// Parameters of the decomposition: factors `n_{j+1}, …, n_{2j}` are limited
/// to `<= z`, and `j` runs to `k`. Valid for `n <= 2 z^k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HbParams {
    pub z: f64,
    pub k: u32,
}

impl HbParams {
    pub fn new(z: f64, k: u32) -> Result<Self, ExpSumError> {
        if !(z >= 1.0) || k == 0 {
            return Err(ExpSumError::Precondition(format!(
                "need z >= 1 and k >= 1, got z = {z}, k = {k}"
            )));
        }
        Ok(HbParams { z, k })
    }

    /// Largest `n` the identity covers, `⌊2 z^k⌋`.
    pub fn max_n(&self) -> f64 {
        2.0 * self.z.powi(self.k as i32)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Dirichlet convolution of two functions given on the divisors of `n`.
fn convolve(divs: &[u64], f: &[i128], g: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; divs.len()];
    for (i, &d) in divs.iter().enumerate() {
        if f[i] == 0 {
            continue;
        }
        for (j, &e) in divs.iter().enumerate() {
            if g[j] == 0 {
                continue;
            }
            let de = d * e;
            if let Ok(idx) = divs.binary_search(&de) {
                out[idx] += f[i] * g[j];
            }
        }
    }
    out
}

fn binom(k: u32, j: u32) -> i128 {
    (0..j).fold(1i128, |acc, i| acc * (k - i) as i128 / (i + 1) as i128)
}

/// Right side of the identity at `n`:
/// `Σ_{j<=k} (−1)^(j−1) C(k,j) Σ_{n_1⋯n_{2j}=n, n_{j+1..2j}<=z} log n_1 · μ(n_{j+1})⋯μ(n_{2j})`.
///
/// The sum over factorizations is collected into integer weights `G(d)` on
/// the divisors of `n`, so that the value is `Σ_{d|n} G(d) log(n/d)` with
/// `G = Σ_j (−1)^(j−1) C(k,j) · 1^{*(j−1)} * μ_z^{*j}`.
pub fn heath_brown_rhs(n: u64, params: HbParams) -> Result<f64, ExpSumError> {
    if n == 0 || n as f64 > params.max_n() {
        return Err(ExpSumError::Precondition(format!(
            "n = {n} outside [1, 2 z^k] = [1, {}]",
            params.max_n()
        )));
    }
    let divs = divisors(n);
    let zf = params.z.floor();
    let mu_z: Vec<i128> = divs
        .iter()
        .map(|&d| {
            if d as f64 <= zf {
                i128::from(mobius(d))
            } else {
                0
            }
        })
        .collect();
    let one = vec![1i128; divs.len()];
    let mut delta = vec![0i128; divs.len()];
    delta[0] = 1;

    let mut ones_pow = delta.clone(); // 1^{*(j-1)}
    let mut mu_pow = mu_z.clone(); // μ_z^{*j}
    let mut g = vec![0i128; divs.len()];
    for j in 1..=params.k {
        let term = convolve(&divs, &ones_pow, &mu_pow);
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let c = sign * binom(params.k, j);
        for (gi, ti) in g.iter_mut().zip(&term) {
            *gi += c * ti;
        }
        ones_pow = convolve(&divs, &ones_pow, &one);
        mu_pow = convolve(&divs, &mu_pow, &mu_z);
    }
    let mut acc = Neumaier::default();
    for (i, &d) in divs.iter().enumerate() {
        if g[i] != 0 {
            acc.add(g[i] as f64 * ((n / d) as f64).ln());
        }
    }
    Ok(acc.sum())
}

/// `|RHS − Λ(n)|`.
pub fn heath_brown_check(n: u64, params: HbParams) -> Result<f64, ExpSumError> {
    Ok((heath_brown_rhs(n, params)? - von_mangoldt(n)).abs())
}
