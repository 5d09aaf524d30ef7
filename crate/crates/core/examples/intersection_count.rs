//! Counts primes in `B_{√2,3/10} ∩ B_{√3,7/10} ∩ N^(13/12)` up to `x` by both
//! methods and prints the reports.
//!
//! ```text
//! cargo run --release --example intersection_count -- 100000000
//! ```

use bps::counting::{count_with, CountQuery, CountReport, Method};
use bps::exactnum::{parse_count, RationalExponent};
use bps::sequences::{BeattySpec, PsSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = match std::env::args().nth(1) {
        Some(s) => parse_count(&s)?,
        None => 10_000_000,
    };
    let q = CountQuery::new(
        vec![
            BeattySpec::parse("sqrt(2)", "3/10")?,
            BeattySpec::parse("sqrt(3)", "7/10")?,
        ],
        Some(PsSpec::new(RationalExponent::new(13, 12)?)?),
        x,
    )?;
    println!("{}", CountReport::CSV_HEADER);
    for method in [Method::EnumeratePs, Method::SieveFilter] {
        let r = count_with(&q, method)?;
        println!("{}", r.csv_row());
    }
    Ok(())
}
