use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactnum::{compare_surd, QuadraticSurd};

fn s(x: &str) -> QuadraticSurd {
    x.parse().unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn classical_expansions() {
    let cf = cf_expand(&s("sqrt(2)"), 6);
    assert_eq!(cf.partial_quotients, ints(&[1, 2, 2, 2, 2, 2]));
    assert_eq!(
        cf.periodic_tail,
        Some(Period {
            start: 1,
            length: 1
        })
    );
    let cf = cf_expand(&s("(1+sqrt(5))/2"), 8);
    assert_eq!(cf.partial_quotients, ints(&[1; 8]));
    assert_eq!(cf.periodic_tail.map(|p| p.length), Some(1));
    let cf = cf_expand(&s("13/12"), 10);
    assert_eq!(cf.partial_quotients, ints(&[1, 12]));
    assert!(cf.terminates);
    // √7 = [2; 1, 1, 1, 4, …]
    let cf = cf_expand(&s("sqrt(7)"), 9);
    assert_eq!(cf.partial_quotients, ints(&[2, 1, 1, 1, 4, 1, 1, 1, 4]));
    assert_eq!(
        cf.periodic_tail,
        Some(Period {
            start: 1,
            length: 4
        })
    );
    // negative and scaled surds
    let cf = cf_expand(&s("-sqrt(2)"), 4);
    assert_eq!(cf.partial_quotients, ints(&[-2, 1, 1, 2]));
    let cf = cf_expand(&s("1/sqrt(3)"), 5);
    assert_eq!(cf.partial_quotients, ints(&[0, 1, 1, 2, 1]));
}

/// Partial quotients by repeated `x ↦ 1/{x}` on exact surds.
fn naive_cf(alpha: &QuadraticSurd, k: usize) -> Vec<BigInt> {
    let mut x = alpha.clone();
    let mut out = Vec::new();
    for _ in 0..k {
        let a = x.floor();
        out.push(a.clone());
        let rest = x.try_sub(&QuadraticSurd::integer(a)).unwrap();
        if rest.is_zero() {
            break;
        }
        x = rest.recip().unwrap();
    }
    out
}

#[test]
fn expansion_matches_naive_surd_recursion() {
    for a in [
        "sqrt(2)",
        "sqrt(3)",
        "(1+sqrt(5))/2",
        "(3-2*sqrt(11))/7",
        "sqrt(94)",
        "22/7",
        "-17/5",
        "1/sqrt(2)+3/10",
    ] {
        let alpha = s(a);
        assert_eq!(
            cf_expand(&alpha, 30).partial_quotients,
            naive_cf(&alpha, 30),
            "{a}"
        );
    }
}

#[test]
fn convergent_identities() {
    for a in ["sqrt(2)", "sqrt(3)", "(1+sqrt(5))/2"] {
        let alpha = s(a);
        let cf = cf_expand(&alpha, 50);
        let conv = cf.convergents();
        for k in 1..conv.len() {
            let (p, q) = &conv[k];
            let (p1, q1) = &conv[k - 1];
            let det = p * q1 - p1 * q;
            let want = if k % 2 == 1 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            assert_eq!(det, want, "{a}, k = {k}");
        }
        for (p, q) in &conv {
            // |α − p/q| < 1/q²  ⇔  |αq² − pq| < 1
            let err = alpha
                .mul_int(&(q * q))
                .try_sub(&QuadraticSurd::integer(p * q))
                .unwrap();
            let abs = if err.signum().is_lt() { -err } else { err };
            assert!(compare_surd(&abs, &QuadraticSurd::integer(1))
                .unwrap()
                .is_lt());
        }
    }
}

#[test]
fn best_approx_examples() {
    let b = best_approx(&s("sqrt(2)"), 10).unwrap();
    assert_eq!(
        (b.a.clone(), b.q.clone()),
        (BigInt::from(7), BigInt::from(5))
    );
    let b = best_approx(&s("(1+sqrt(5))/2"), 13).unwrap();
    assert_eq!(
        (b.a.clone(), b.q.clone()),
        (BigInt::from(21), BigInt::from(13))
    );
    let b = best_approx(&s("3/2"), 2).unwrap();
    assert_eq!(
        (b.a.clone(), b.q.clone()),
        (BigInt::from(3), BigInt::from(2))
    );
    assert!(b.theta.is_zero());
    assert!(best_approx(&s("3/2"), 0).is_err());
}

#[test]
fn best_approx_theta_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for a in ["sqrt(2)", "sqrt(3)", "(1+sqrt(5))/2", "sqrt(1001)/7"] {
        for _ in 0..25 {
            let qmax = rng.gen_range(1..1_000_000_000_000u64);
            let b = best_approx(&s(a), qmax).unwrap();
            assert!(b.q <= BigInt::from(qmax));
            let one = QuadraticSurd::integer(1);
            assert!(compare_surd(&b.theta, &one).unwrap().is_le());
            assert!(compare_surd(&-b.theta.clone(), &one).unwrap().is_le());
        }
    }
}

#[test]
fn type_estimates() {
    let t = estimate_type(&s("sqrt(2)"), 1_000_000, &[0.5, 1.0, 1.5]).unwrap();
    let floor = 1.0 / (2.0 + 2.0 * 2f64.sqrt());
    assert!(t.e_values[1] >= floor, "{t:?}");
    assert!(!t.trending_to_zero[1] && !t.trending_to_zero[2]);
    assert!(t.trending_to_zero[0]);
    assert!(t.e_values[2] > 0.1);
    assert_eq!(t.analytic_upper_bound, Some(1.0));
    let r = estimate_type(&s("3/2"), 100, &[1.0]).unwrap();
    assert!(r.rational && r.e_values[0] == 0.0 && r.analytic_upper_bound.is_none());
    // non-decreasing in t at fixed N, non-increasing in N at fixed t
    let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 10.0).collect();
    let t = estimate_type(&s("sqrt(3)"), 100_000, &grid).unwrap();
    assert!(t.e_values.windows(2).all(|w| w[0] <= w[1]));
    assert!(t.e_values.iter().zip(&t.e_sqrt_n).all(|(a, b)| a <= b));
}

#[test]
fn type_minimum_sits_at_convergent_denominators() {
    for a in ["sqrt(2)", "sqrt(3)", "(1+sqrt(5))/2", "sqrt(13)/3"] {
        let alpha = s(a);
        let n_max = 10_000u64;
        let grid = [0.0, 0.5, 1.0, 1.25, 2.0];
        let est = estimate_type(&alpha, n_max, &grid).unwrap();
        for (i, &t) in grid.iter().enumerate() {
            let brute = (1..=n_max)
                .map(|n| (n as f64).powf(t) * alpha.mul_int(&BigInt::from(n)).dist_to_int())
                .fold(f64::INFINITY, f64::min);
            assert!(
                (brute - est.e_values[i]).abs() <= 1e-12 * brute.max(1e-300),
                "{a} t = {t}"
            );
        }
    }
}

#[test]
fn independence_examples() {
    let r = independence_probe(&[s("1/sqrt(2)"), s("1/sqrt(3)")], 50).unwrap();
    assert!(r.relation.is_none() && r.exhaustive);
    assert_eq!(r.relation_space_dim, 0);
    assert!(!r.caveat.is_empty());
    let r = independence_probe(&[s("1/sqrt(2)"), s("sqrt(2)/2")], 2).unwrap();
    assert_eq!(r.relation, Some(vec![0, 1, -1]));
    let r = independence_probe(&[s("3/5")], 5).unwrap();
    assert_eq!(r.relation, Some(vec![-3, 5]));
    let r = independence_probe(&[s("3/7")], 5).unwrap();
    assert_eq!(r.relation, None);
    assert_eq!(r.relation_space_dim, 1);
    assert!(independence_probe(&[], 5).is_err());
    assert!(independence_probe(&[s("sqrt(2)")], 1001).is_err());
}

/// Brute-force relation search in floating point for tiny bounds.
fn float_relation(omegas: &[f64], bound: i64) -> bool {
    let n = omegas.len() + 1;
    let mut c = vec![-bound; n];
    loop {
        if c.iter().any(|&v| v != 0) {
            let v = c[0] as f64
                + c[1..]
                    .iter()
                    .zip(omegas)
                    .map(|(&k, &w)| k as f64 * w)
                    .sum::<f64>();
            if v.abs() < 1e-9 {
                return true;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            c[i] += 1;
            if c[i] > bound {
                c[i] = -bound;
                i += 1;
            } else {
                break;
            }
        }
    }
}

#[test]
fn independence_agrees_with_float_search() {
    let pool = [
        "sqrt(2)",
        "1/sqrt(2)",
        "sqrt(3)/2",
        "(1+sqrt(5))/2",
        "3/4",
        "sqrt(8)",
        "1+sqrt(3)",
        "sqrt(5)/3",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let k = rng.gen_range(1..=3);
        let omegas: Vec<QuadraticSurd> = (0..k)
            .map(|_| s(pool[rng.gen_range(0..pool.len())]))
            .collect();
        let floats: Vec<f64> = omegas.iter().map(QuadraticSurd::to_f64).collect();
        let r = independence_probe(&omegas, 3).unwrap();
        assert_eq!(
            r.relation.is_some(),
            float_relation(&floats, 3),
            "{omegas:?}"
        );
        if let Some(c) = r.relation {
            let mut acc = QuadraticSurd::integer(c[0]);
            for (ci, w) in c[1..].iter().zip(&omegas) {
                acc = acc.try_add(&w.mul_int(&BigInt::from(*ci))).unwrap_or(acc);
            }
            let v = c[0] as f64
                + c[1..]
                    .iter()
                    .zip(&floats)
                    .map(|(&k, &w)| k as f64 * w)
                    .sum::<f64>();
            assert!(v.abs() < 1e-9);
        }
    }
}

#[test]
fn combined_type_consistency() {
    let w = s("1/sqrt(2)");
    let grid = [0.5, 1.0, 1.5];
    let single = combined_type_check(&[w.clone()], &[1], 100_000, &grid).unwrap();
    let direct = estimate_type(&w, 100_000, &grid).unwrap();
    assert_eq!(single.e_values, direct.e_values);
    let deg = combined_type_check(&[w.clone(), s("1/sqrt(3)")], &[2, 0], 100_000, &grid).unwrap();
    let twice = estimate_type(&w.mul_int(&BigInt::from(2)), 100_000, &grid).unwrap();
    assert_eq!(deg.e_values, twice.e_values);
    let mixed = combined_type_check(&[w, s("1/sqrt(3)")], &[1, 1], 100_000, &grid).unwrap();
    assert!(mixed.e_values[1] > 0.0 && !mixed.truncated, "{mixed:?}");
    assert_eq!(mixed.analytic_upper_bound, Some(2.0));
}

#[test]
fn combined_type_matches_float_scan() {
    let omegas = [s("1/sqrt(2)"), s("1/sqrt(3)")];
    let est = combined_type_check(&omegas, &[1, 1], 10_000, &[1.0]).unwrap();
    let theta = 0.5f64.sqrt() + (1.0f64 / 3.0).sqrt();
    let brute = (1..=10_000u64)
        .map(|n| {
            let x = n as f64 * theta;
            n as f64 * (x - x.round()).abs()
        })
        .fold(f64::INFINITY, f64::min);
    assert!(
        (brute - est.e_values[0]).abs() < 1e-9,
        "{brute} vs {:?}",
        est.e_values
    );
    assert!(!BigInt::from(est.argmin[0]).is_negative());
}
