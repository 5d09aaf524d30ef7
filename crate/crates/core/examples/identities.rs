//! Vaaler's approximation of the sawtooth and Heath-Brown's identity for
//! `Λ`, both checked numerically.
//!
//! ```text
//! cargo run --release --example identities
//! ```

use bps::expsum::{heath_brown_check, sawtooth, vaaler_build, HbParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("H,max(|psi - approx| - majorant),min majorant");
    for h in [1usize, 4, 16, 64, 256] {
        let v = vaaler_build(h)?;
        let g = v.check_grid(10_000);
        println!("{h},{:.2e},{:.2e}", g.max_excess, g.min_majorant);
    }
    let v = vaaler_build(16)?;
    for t in [0.05, 0.3, 0.5, 0.99] {
        println!(
            "t = {t}: psi = {:+.5}, approx = {:+.5}, majorant = {:.5}",
            sawtooth(t),
            v.approx(t),
            v.majorant(t)
        );
    }

    let params = HbParams::new(30.0, 3)?;
    let worst = (1..=54_000u64)
        .step_by(7)
        .map(|n| heath_brown_check(n, params))
        .try_fold(0.0f64, |m, r| r.map(|r| m.max(r)))?;
    println!("Heath-Brown (z = 30, k = 3), every 7th n <= 54000: max residual {worst:.2e}");
    Ok(())
}
