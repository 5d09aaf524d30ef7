//! Primes, `Λ(n)` and `μ(n)` on a segment far from the origin, and `π(x)`
//! by the segmented sieve.
//!
//! ```text
//! cargo run --release --example prime_tables -- 1e12
//! ```

use bps::arith::{chebyshev_psi, is_prime_u64, prime_pi, ArithTables};
use bps::exactnum::parse_count;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lo = match std::env::args().nth(1) {
        Some(s) => parse_count(&s)?,
        None => 1_000_000_000_000,
    };
    let t = ArithTables::sieve_segment(lo, lo + 40)?;
    println!("n,prime,lambda,mu");
    for n in lo..lo + 40 {
        println!("{n},{},{:.6},{}", t.is_prime(n), t.lambda(n), t.mu(n));
        assert_eq!(t.is_prime(n), is_prime_u64(n));
    }
    for x in [1_000_000u64, 10_000_000, 100_000_000] {
        let psi = chebyshev_psi(x);
        println!(
            "pi({x}) = {}, psi({x})/x = {:.6}",
            prime_pi(x),
            psi / x as f64
        );
    }
    Ok(())
}
