//! Exact floors of quadratic surds and rational powers, checked against the
//! nearest `f64` answer to show where floating point gets them wrong.
//!
//! ```text
//! cargo run --example exact_floors
//! ```

use bps::exactnum::{floor_rational_power_u64, QuadraticSurd, RationalExponent, SurdLine};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha: QuadraticSurd = "sqrt(2)".parse()?;
    let beta: QuadraticSurd = "3/10".parse()?;
    let line = SurdLine::new(&alpha, &beta)?;
    println!("floor(sqrt(2)*n + 3/10):");
    for n in [
        1i64,
        10,
        1_000_000,
        1_000_000_000_000,
        4_000_000_000_000_000_000,
    ] {
        let exact = line.floor(n);
        let approx = (2f64.sqrt() * n as f64 + 0.3).floor();
        println!("  n = {n:>22}  exact {exact:>24}  f64 {approx:>26.0}");
    }

    // (k^12)^(13/12) = k^13 sits exactly on an integer; the f64 power can
    // land on either side of it.
    let c = RationalExponent::new(13, 12)?;
    println!("floor(m^(13/12)) near perfect 12th powers:");
    for k in [7u64, 11, 15, 30] {
        let m = k.pow(12);
        for mm in [m - 1, m, m + 1] {
            let (f, exact) = floor_rational_power_u64(mm, c).expect("fits in u64");
            let approx = (mm as f64).powf(13.0 / 12.0).floor();
            println!(
                "  m = {mm:>20}  exact {f:>22} (integer power: {exact:5})  f64 {approx:>24.0}"
            );
        }
    }

    let phi: QuadraticSurd = "(1+sqrt(5))/2".parse()?;
    let phi2 = phi.try_mul(&phi)?;
    println!(
        "phi^2 = {phi2}, phi^2 - phi - 1 = {}",
        phi2.try_sub(&phi)?.try_sub(&QuadraticSurd::integer(1))?
    );
    Ok(())
}
