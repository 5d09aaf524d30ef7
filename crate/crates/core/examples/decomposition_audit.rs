//! Splits the count of primes in `B_{√2,3/10} ∩ B_{√3,7/10} ∩ N^(13/12)` into
//! the main sum `S1` and six sawtooth error sums, and checks that they add
//! up to the observed count.
//!
//! ```text
//! cargo run --release --example decomposition_audit -- 1e6
//! ```

use bps::counting::{decomposition_audit, CountQuery};
use bps::exactnum::{parse_count, RationalExponent};
use bps::sequences::{BeattySpec, PsSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = match std::env::args().nth(1) {
        Some(s) => parse_count(&s)?,
        None => 1_000_000,
    };
    let q = CountQuery::new(
        vec![
            BeattySpec::parse("sqrt(2)", "3/10")?,
            BeattySpec::parse("sqrt(3)", "7/10")?,
        ],
        Some(PsSpec::new(RationalExponent::new(13, 12)?)?),
        x,
    )?;
    let r = decomposition_audit(&q)?;
    for (i, s) in r.s.iter().enumerate() {
        println!("S{} = {s:>16.6}", i + 1);
    }
    println!(
        "sum = {:.6}, observed = {}, |difference| = {:.2e}",
        r.sum, r.observed, r.abs_error
    );
    println!("main term x^gamma/(sqrt(6) log x) = {:.1}", q.predicted());
    Ok(())
}
