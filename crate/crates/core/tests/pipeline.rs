//! Cross-module checks against oracles that share no code with the library.

use bps::counting::{count_with, CountQuery, Method};
use bps::exactnum::RationalExponent;
use bps::sequences::{char_psi_identity_residual, BeattySpec, PsSpec, SequenceSpec};

/// Trial-division primality.
fn prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[test]
fn sqrt2_beatty_primes_by_integer_square_roots() {
    // floor(n sqrt 2) = isqrt(2 n^2)
    let x = 300_000u64;
    let mut want = 0;
    for n in 1u64.. {
        let t = (2 * n * n).isqrt();
        if t > x {
            break;
        }
        want += u64::from(prime(t));
    }
    let q = CountQuery::new(vec![BeattySpec::parse("sqrt(2)", "0").unwrap()], None, x).unwrap();
    for m in [Method::EnumerateBeatty, Method::SieveFilter] {
        assert_eq!(count_with(&q, m).unwrap().observed, want, "{m:?}");
    }
}

#[test]
fn golden_and_shifted_sqrt3_intersection() {
    // floor(nφ) = floor((n + isqrt(5n^2)) / 2); floor(n√3 + 7/10) is the
    // largest t with (10t - 7)^2 <= 300n^2.
    let x = 200_000u64;
    let phi = |n: u64| (n + (5 * n * n).isqrt()) / 2;
    let mut in_phi = vec![false; x as usize + 1];
    for n in 1u64.. {
        let t = phi(n);
        if t > x {
            break;
        }
        in_phi[t as usize] = true;
    }
    let mut in_sqrt3 = vec![false; x as usize + 1];
    for n in 1u64.. {
        let mut t = ((n as f64) * 3f64.sqrt() + 0.7).floor() as i64;
        let ok = |t: i64| {
            let l = 10 * t - 7;
            l <= 0 || (l * l) as u128 <= 300 * (n as u128) * (n as u128)
        };
        while !ok(t) {
            t -= 1;
        }
        while ok(t + 1) {
            t += 1;
        }
        if t as u64 > x {
            break;
        }
        in_sqrt3[t as usize] = true;
    }
    let want = (2..=x)
        .filter(|&m| in_phi[m as usize] && in_sqrt3[m as usize] && prime(m))
        .count() as u64;
    let q = CountQuery::new(
        vec![
            BeattySpec::parse("(1+sqrt(5))/2", "0").unwrap(),
            BeattySpec::parse("sqrt(3)", "7/10").unwrap(),
        ],
        None,
        x,
    )
    .unwrap();
    assert_eq!(
        count_with(&q, Method::EnumerateBeatty).unwrap().observed,
        want
    );
    assert_eq!(count_with(&q, Method::SieveFilter).unwrap().observed, want);
}

#[test]
fn expansions_hold_at_integer_powers() {
    // m^(13/12) is an integer exactly when m is a 12th power.
    let spec = PsSpec::new(RationalExponent::new(13, 12).unwrap()).unwrap();
    let s = SequenceSpec::Ps(spec);
    for k in 2u64..=36 {
        let m = k.pow(12);
        for mm in [m - 1, m, m + 1] {
            assert!(char_psi_identity_residual(&s, mm).abs() < 1e-9, "m = {mm}");
        }
        if let Some(t) = k.checked_pow(13) {
            assert!(spec.contains(t), "{k}^13");
        }
    }
    // 8191 = 2^13 - 1 is prime but not a term: 4096^(13/12) = 8192 exactly.
    assert!(!spec.contains(8191) && spec.contains(8192));
}
