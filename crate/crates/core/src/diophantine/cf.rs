use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::QuadraticSurd;

/// States examined while looking for the period of a quadratic irrational.
const PERIOD_SEARCH_CAP: usize = 100_000;

/// `(start, length)`: `a_{i+length} = a_i` for all `i >= start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Period {
    pub start: usize,
    pub length: usize,
}

/// `[a_0; a_1, a_2, …]`, truncated, with the repeating block when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub partial_quotients: Vec<BigInt>,
    pub periodic_tail: Option<Period>,
    /// The expansion ends (rational input).
    pub terminates: bool,
}

impl ContinuedFraction {
    /// Convergents `p_k / q_k` for every stored partial quotient.
    pub fn convergents(&self) -> Vec<(BigInt, BigInt)> {
        convergents_of(&self.partial_quotients)
    }

    /// `a_i`, following the period past the stored prefix.
    pub fn term(&self, i: usize) -> Option<BigInt> {
        if let Some(a) = self.partial_quotients.get(i) {
            return Some(a.clone());
        }
        let p = self.periodic_tail?;
        let j = p.start + (i - p.start) % p.length;
        self.partial_quotients.get(j).cloned()
    }
}

pub(crate) fn convergents_of(terms: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(terms.len());
    for a in terms {
        let p = a * &p1 + &p2;
        let q = a * &q1 + &q2;
        out.push((p.clone(), q.clone()));
        p2 = std::mem::replace(&mut p1, p);
        q2 = std::mem::replace(&mut q1, q);
    }
    out
}

/// Lazily produces partial quotients of an exact surd.
///
/// Quadratic irrationals are carried as `(P + √D) / Q` with `Q | D − P²`, so
/// each step is integer arithmetic and the state `(P, Q)` eventually repeats.
#[derive(Clone, Debug)]
pub enum CfExpander {
    Rational {
        num: BigInt,
        den: BigInt,
    },
    Quadratic {
        p: BigInt,
        q: BigInt,
        d: BigInt,
        sqrt_d: BigInt,
    },
    Done,
}

impl CfExpander {
    pub fn new(alpha: &QuadraticSurd) -> Self {
        if alpha.is_rational() {
            return CfExpander::Rational {
                num: alpha.p().clone(),
                den: alpha.r().clone(),
            };
        }
        // α = (p + q√d)/r = (P + √(q²d)) / Q with signs moved into P and Q.
        let sign = if alpha.q().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let mut p = alpha.p() * &sign;
        let mut q = alpha.r() * &sign;
        let mut d = alpha.q() * alpha.q() * BigInt::from(alpha.d());
        if !(&d - &p * &p).is_multiple_of(&q) {
            let qa = q.abs();
            p *= &qa;
            d *= &qa * &qa;
            q *= &qa;
        }
        let sqrt_d = d.sqrt();
        CfExpander::Quadratic { p, q, d, sqrt_d }
    }

    /// Current `(P, Q)` for quadratic states.
    fn state(&self) -> Option<(BigInt, BigInt)> {
        match self {
            CfExpander::Quadratic { p, q, .. } => Some((p.clone(), q.clone())),
            _ => None,
        }
    }
}

impl Iterator for CfExpander {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        match self {
            CfExpander::Done => None,
            CfExpander::Rational { num, den } => {
                let (a, r) = num.div_mod_floor(den);
                if r.is_zero() {
                    *self = CfExpander::Done;
                } else {
                    let new_den = r;
                    *num = std::mem::replace(den, new_den);
                }
                Some(a)
            }
            CfExpander::Quadratic { p, q, d, sqrt_d } => {
                // √D is irrational, so ⌊(P + √D)/Q⌋ = ⌊(P + ⌊√D⌋)/Q⌋ for Q > 0
                // and −⌊(P + ⌊√D⌋)/|Q|⌋ − 1 for Q < 0.
                let a = if q.is_positive() {
                    (&*p + &*sqrt_d).div_floor(q)
                } else {
                    -((&*p + &*sqrt_d).div_floor(&-&*q)) - 1
                };
                let p_next = &a * &*q - &*p;
                let q_next = (&*d - &p_next * &p_next) / &*q;
                *p = p_next;
                *q = q_next;
                Some(a)
            }
        }
    }
}

/// First `k` partial quotients of `alpha`, with period detection for
/// quadratic irrationals.
pub fn cf_expand(alpha: &QuadraticSurd, k: usize) -> ContinuedFraction {
    let mut ex = CfExpander::new(alpha);
    if !matches!(ex, CfExpander::Quadratic { .. }) {
        let terms: Vec<BigInt> = ex.by_ref().take(k).collect();
        let terminates = matches!(ex, CfExpander::Done);
        return ContinuedFraction {
            partial_quotients: terms,
            periodic_tail: None,
            terminates,
        };
    }
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut terms = Vec::new();
    let mut period = None;
    for i in 0..PERIOD_SEARCH_CAP.max(k) {
        let st = ex.state().expect("quadratic");
        if let Some(&j) = seen.get(&st) {
            period = Some(Period {
                start: j,
                length: i - j,
            });
            break;
        }
        seen.insert(st, i);
        terms.push(ex.next().expect("infinite expansion"));
        if i + 1 >= k && i + 1 >= PERIOD_SEARCH_CAP {
            break;
        }
    }
    let cf = ContinuedFraction {
        partial_quotients: terms,
        periodic_tail: period,
        terminates: false,
    };
    let partial_quotients = (0..k).map_while(|i| cf.term(i)).collect();
    ContinuedFraction {
        partial_quotients,
        ..cf
    }
}
