use num_bigint::BigUint;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::arith::prime_pi;
use crate::exactnum::RationalExponent;

fn ps(num: u32, den: u32) -> PsSpec {
    PsSpec::new(RationalExponent::new(num, den).unwrap()).unwrap()
}

fn beatty(a: &str, b: &str) -> BeattySpec {
    BeattySpec::parse(a, b).unwrap()
}

fn trial_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Primes `<= x` of the form `⌊n^(13/12)⌋`, by trial division and
/// `BigUint::nth_root`.
fn brute_ps_primes(x: u64) -> u64 {
    let mut count = 0;
    for n in 1u64.. {
        let v = u64::try_from(BigUint::from(n).pow(13).nth_root(12)).unwrap();
        if v > x {
            break;
        }
        if trial_prime(v) {
            count += 1;
        }
    }
    count
}

#[test]
fn ps_prime_counts_match_brute_force() {
    let s = ps(13, 12);
    for x in [2u64, 10, 100, 5_000] {
        let r = count_ps_primes(&s, x).unwrap();
        assert_eq!(r.observed, brute_ps_primes(x), "x = {x}");
        let q = CountQuery::new(vec![], Some(s), x).unwrap();
        assert_eq!(
            count_with(&q, Method::SieveFilter).unwrap().observed,
            r.observed
        );
    }
    // 2, 3, 5 are all terms (⌊2^c⌋, ⌊3^c⌋, ⌊4^c⌋ = 2, 3, 4; ⌊5^c⌋ = 5)
    assert_eq!(count_ps_primes(&s, 10).unwrap().observed, 3);
}

#[test]
fn empty_beatty_list_reduces_to_ps_count() {
    let s = ps(13, 12);
    let q = CountQuery::new(vec![], Some(s), 1_000_000).unwrap();
    let a = count_intersection_primes(&q).unwrap();
    let b = count_ps_primes(&s, 1_000_000).unwrap();
    assert_eq!(a.observed, b.observed);
    assert_eq!(a.predicted, b.predicted);
}

#[test]
fn no_sequences_counts_all_primes() {
    let q = CountQuery::new(vec![], None, 100_000).unwrap();
    let r = count_intersection_primes(&q).unwrap();
    assert_eq!(r.method, Method::SieveFilter);
    assert_eq!(r.observed, prime_pi(100_000));
    assert!(count_with(&q, Method::EnumeratePs).is_err());
}

#[test]
fn single_beatty_close_to_main_term() {
    let q = CountQuery::new(vec![beatty("sqrt(2)", "0")], None, 100_000).unwrap();
    let (a, b) = two_path_count(&q).unwrap();
    assert_eq!(a.observed, b.observed);
    // direct oracle: primes ⌊n√2⌋ = isqrt(2n²)
    let direct = (1u64..)
        .map(|n| (2 * (n as u128) * (n as u128)).isqrt() as u64)
        .take_while(|&v| v <= 100_000)
        .filter(|&v| trial_prime(v))
        .count() as u64;
    assert_eq!(a.observed, direct);
    assert!(a.relative_error_li() < 0.05, "{a:?}");
}

#[test]
fn two_paths_agree_on_random_queries() {
    let alphas = [
        "sqrt(2)",
        "sqrt(3)",
        "(1+sqrt(5))/2",
        "sqrt(5)",
        "sqrt(7)/2",
    ];
    let betas = ["0", "3/10", "7/10", "-1/3", "1/2"];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..12 {
        let xi = rng.gen_range(0..=3);
        let specs = (0..xi)
            .map(|_| beatty(alphas[rng.gen_range(0..5)], betas[rng.gen_range(0..5)]))
            .collect();
        let c = if rng.gen_bool(0.7) {
            RationalExponent::new(rng.gen_range(13..=20), rng.gen_range(12..=19)).ok()
        } else {
            None
        };
        let c = c
            .filter(|c| c.cmp_ratio(1, 1).is_gt() && c.cmp_ratio(12, 11).is_lt())
            .map(|c| PsSpec::new(c).unwrap());
        let x = rng.gen_range(10..1_000_000);
        let q = CountQuery::new(specs, c, x).unwrap();
        let reference = count_with(&q, Method::SieveFilter).unwrap().observed;
        let a = count_intersection_primes(&q).unwrap();
        assert_eq!(a.observed, reference, "{q:?}");
    }
}

#[test]
fn counts_are_monotone_in_x() {
    let q = CountQuery::new(
        vec![beatty("sqrt(2)", "3/10"), beatty("sqrt(3)", "7/10")],
        Some(ps(13, 12)),
        10,
    )
    .unwrap();
    let mut last = 0;
    for x in [10u64, 1_000, 30_000, 300_000, 2_000_000] {
        let r = count_intersection_primes(&q.with_x(x).unwrap()).unwrap();
        assert!(r.observed >= last);
        last = r.observed;
    }
}

#[test]
fn decomposition_identity_small() {
    let q = CountQuery::new(
        vec![beatty("sqrt(2)", "0"), beatty("sqrt(3)", "0")],
        Some(ps(13, 12)),
        10_000,
    )
    .unwrap();
    let d = decomposition_audit(&q).unwrap();
    assert!(d.passed, "{d:?}");
    assert_eq!(d.observed, count_intersection_primes(&q).unwrap().observed);
    let pi_c = count_ps_primes(&ps(13, 12), 10_000).unwrap().observed as f64;
    let w = 1.0 / 6f64.sqrt();
    assert!((d.s[0] - w * pi_c).abs() < 1e-9 * pi_c);
    assert!(matches!(
        decomposition_audit(&CountQuery::new(vec![], Some(ps(13, 12)), 100).unwrap()),
        Err(CountError::AuditShape)
    ));
}

#[test]
fn transfer_check_examples() {
    let one = |_| Complex64::new(1.0, 0.0);
    let r = prime_to_lambda_transfer_check(one, 10_000, 20_000).unwrap();
    assert_eq!(r.lhs, (prime_pi(20_000) - prime_pi(10_000)) as f64);
    assert!(r.ratio.is_finite() && r.ratio > 0.0);
    let e = |n: u64| {
        let t = (n as f64 * std::f64::consts::SQRT_2).fract();
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t)
    };
    let r = prime_to_lambda_transfer_check(e, 10_000, 20_000).unwrap();
    assert!(r.ratio.is_finite());
    let r = prime_to_lambda_transfer_check(one, 10_000, 10_000).unwrap();
    assert_eq!(r.lhs, 0.0);
}

#[test]
fn csv_and_json_round_trip() {
    let q = CountQuery::new(vec![beatty("sqrt(2)", "3/10")], Some(ps(13, 12)), 1000).unwrap();
    let r = count_intersection_primes(&q).unwrap();
    let row = r.csv_row();
    assert_eq!(
        row.split(',').count(),
        CountReport::CSV_HEADER.split(',').count()
    );
    assert!(row.contains("enumerate-ps"));
    let back: CountReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn query_validation() {
    assert!(matches!(
        CountQuery::new(vec![], None, 1),
        Err(CountError::XTooSmall(1, 2))
    ));
    let many = vec![beatty("sqrt(2)", "0"); 9];
    assert!(matches!(
        CountQuery::new(many, None, 100),
        Err(CountError::TooManySequences(9))
    ));
}
