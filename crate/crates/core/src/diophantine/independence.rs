use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::DiophError;
use crate::exactnum::QuadraticSurd;

/// Coefficient vectors tried before the search gives up.
pub const PROBE_BUDGET: u64 = 50_000_000;

/// Wording attached to every independence report.
pub const INDEPENDENCE_CAVEAT: &str =
    "linear independence over Q is only checked for integer coefficients up to the stated bound; \
     a negative search result is consistent with the hypothesis, not a proof of it";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub bound: i64,
    /// `(c_0, c_1, …, c_ξ)` with `c_0 + Σ c_i ω_i = 0`, first nonzero `c_i`
    /// (`i >= 1`) positive.
    pub relation: Option<Vec<i64>>,
    /// Dimension of the space of rational relations. Zero means no relation
    /// exists at any size.
    pub relation_space_dim: usize,
    pub vectors_tried: u64,
    /// The search covered every vector with `max |c_i| <= bound`.
    pub exhaustive: bool,
    pub caveat: String,
}

/// `p/q` with `q > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Frac {
    n: BigInt,
    d: BigInt,
}

impl Frac {
    fn new(n: BigInt, d: BigInt) -> Self {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g.is_zero() {
            (n, d)
        } else {
            (n / &g, d / &g)
        };
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Frac { n, d }
    }
    fn zero() -> Self {
        Frac {
            n: BigInt::zero(),
            d: BigInt::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.n.is_zero()
    }
    fn sub(&self, o: &Frac) -> Frac {
        Frac::new(&self.n * &o.d - &o.n * &self.d, &self.d * &o.d)
    }
    fn mul(&self, o: &Frac) -> Frac {
        Frac::new(&self.n * &o.n, &self.d * &o.d)
    }
    fn div(&self, o: &Frac) -> Frac {
        Frac::new(&self.n * &o.d, &self.d * &o.n)
    }
}

/// Rows of the linear system whose solutions are the rational relations.
///
/// Writing `ω_i = r_i + s_i √d_i`, a relation `c_0 + Σ c_i ω_i = 0` holds iff
/// `c_0 + Σ c_i r_i = 0` and, for every square-free `d > 1`,
/// `Σ_{d_i = d} c_i s_i = 0` (square roots of distinct square-free integers
/// are linearly independent over Q together with 1).
fn relation_system(omegas: &[QuadraticSurd]) -> Vec<Vec<Frac>> {
    let cols = omegas.len() + 1;
    let mut rational = vec![Frac::zero(); cols];
    rational[0] = Frac::new(BigInt::one(), BigInt::one());
    let mut radicals: Vec<(u64, Vec<Frac>)> = Vec::new();
    for (i, w) in omegas.iter().enumerate() {
        rational[i + 1] = Frac::new(w.p().clone(), w.r().clone());
        if !w.is_rational() {
            let s = Frac::new(w.q().clone(), w.r().clone());
            match radicals.iter_mut().find(|(d, _)| *d == w.d()) {
                Some((_, row)) => row[i + 1] = s,
                None => {
                    let mut row = vec![Frac::zero(); cols];
                    row[i + 1] = s;
                    radicals.push((w.d(), row));
                }
            }
        }
    }
    let mut rows = vec![rational];
    rows.extend(radicals.into_iter().map(|(_, r)| r));
    rows
}

/// Reduced row echelon form; returns pivot columns.
fn rref(rows: &mut [Vec<Frac>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.div(&lead);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Searches integer relations `c_0 + Σ c_i ω_i = 0` with `|c_i| <= B`.
///
/// The relation space is computed exactly; the search then walks the free
/// coordinates of that space in order of increasing `max |c|`, so the first
/// hit has the smallest possible height.
pub fn independence_probe(
    omegas: &[QuadraticSurd],
    bound: i64,
) -> Result<IndependenceReport, DiophError> {
    if omegas.is_empty() || omegas.len() > super::MAX_OMEGAS {
        return Err(DiophError::Precondition(format!(
            "need 1..={} values, got {}",
            super::MAX_OMEGAS,
            omegas.len()
        )));
    }
    if !(1..=1000).contains(&bound) {
        return Err(DiophError::Precondition(format!(
            "need 1 <= B <= 1000, got {bound}"
        )));
    }
    let mut rows = relation_system(omegas);
    let pivots = rref(&mut rows);
    let cols = omegas.len() + 1;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut report = IndependenceReport {
        bound,
        relation: None,
        relation_space_dim: free.len(),
        vectors_tried: 0,
        exhaustive: true,
        caveat: INDEPENDENCE_CAVEAT.to_string(),
    };
    if free.is_empty() {
        return Ok(report);
    }
    // pivot value = −Σ_free rows[k][f] · x_f
    let mut assign = vec![0i64; free.len()];
    for height in 1..=bound {
        let mut found = None;
        let complete = for_each_of_height(&mut assign, height, &mut |x| {
            report.vectors_tried += 1;
            if report.vectors_tried > PROBE_BUDGET {
                return Step::Abort;
            }
            let mut c = vec![0i64; cols];
            for (&f, &v) in free.iter().zip(x.iter()) {
                c[f] = v;
            }
            for (k, &p) in pivots.iter().enumerate() {
                let mut acc = Frac::zero();
                for (&f, &v) in free.iter().zip(x.iter()) {
                    if v != 0 {
                        acc = acc.sub(&rows[k][f].mul(&Frac::new(BigInt::from(v), BigInt::one())));
                    }
                }
                if !acc.d.is_one() {
                    return Step::Continue;
                }
                match acc.n.to_i64() {
                    Some(v) if v.abs() <= bound => c[p] = v,
                    _ => return Step::Continue,
                }
            }
            found = Some(c);
            Step::Abort
        });
        if let Some(mut c) = found {
            if let Some(first) = c[1..].iter().find(|&&v| v != 0) {
                if *first < 0 {
                    c.iter_mut().for_each(|v| *v = -*v);
                }
            }
            report.relation = Some(c);
            return Ok(report);
        }
        if !complete {
            report.exhaustive = false;
            return Ok(report);
        }
    }
    Ok(report)
}

enum Step {
    Continue,
    Abort,
}

/// Calls `f` on every vector with `max |x_i| = height`; returns false if `f`
/// aborted.
fn for_each_of_height(x: &mut [i64], height: i64, f: &mut impl FnMut(&[i64]) -> Step) -> bool {
    fn rec(
        x: &mut [i64],
        i: usize,
        height: i64,
        hit: bool,
        f: &mut impl FnMut(&[i64]) -> Step,
    ) -> bool {
        if i == x.len() {
            if !hit {
                return true;
            }
            return !matches!(f(x), Step::Abort);
        }
        // the last coordinate must reach the height if nothing before did
        let forced = i + 1 == x.len() && !hit;
        for v in -height..=height {
            if forced && v.abs() != height {
                continue;
            }
            x[i] = v;
            if !rec(x, i + 1, height, hit || v.abs() == height, f) {
                return false;
            }
        }
        true
    }
    rec(x, 0, height, false, f)
}
