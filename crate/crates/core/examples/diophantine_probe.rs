//! Continued fractions, best approximations, irrationality-type estimates
//! and a bounded search for integer relations among Beatty frequencies.
//!
//! ```text
//! cargo run --release --example diophantine_probe
//! ```

use bps::diophantine::{
    best_approx, cf_expand, combined_type_check, estimate_type, independence_probe,
};
use bps::exactnum::QuadraticSurd;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for a in ["sqrt(2)", "sqrt(7)", "(1+sqrt(5))/2", "355/113"] {
        let alpha: QuadraticSurd = a.parse()?;
        let cf = cf_expand(&alpha, 12);
        let pq: Vec<String> = cf.partial_quotients.iter().map(|x| x.to_string()).collect();
        let b = best_approx(&alpha, 1000)?;
        println!(
            "{a}: [{}], period {:?}, best with q <= 1000: {}/{} (theta = {:.4})",
            pq.join(","),
            cf.periodic_tail.map(|p| (p.start, p.length)),
            b.a,
            b.q,
            b.theta.to_f64()
        );
    }

    let grid = [0.5, 0.9, 1.0, 1.1, 1.5];
    let est = estimate_type(&"sqrt(2)".parse()?, 10_000_000, &grid)?;
    println!("t,E(1e7,t),E(sqrt(1e7),t),still falling");
    for i in 0..grid.len() {
        println!(
            "{},{:.4e},{:.4e},{}",
            grid[i], est.e_values[i], est.e_sqrt_n[i], est.trending_to_zero[i]
        );
    }

    let omegas: Vec<QuadraticSurd> = vec!["1/sqrt(2)".parse()?, "1/sqrt(3)".parse()?];
    let comb = combined_type_check(&omegas, &[1, 1], 1_000_000, &[1.0, 2.0])?;
    println!(
        "1/sqrt(2) + 1/sqrt(3): E(1e6, 1) = {:.4e}, E(1e6, 2) = {:.4e}",
        comb.e_values[0], comb.e_values[1]
    );
    let r = independence_probe(&omegas, 50)?;
    println!("relation with |c_i| <= 50: {:?} ({})", r.relation, r.caveat);
    let dependent: Vec<QuadraticSurd> = vec!["sqrt(2)".parse()?, "3 - 2*sqrt(2)".parse()?];
    println!(
        "sqrt(2), 3-2sqrt(2): {:?}",
        independence_probe(&dependent, 5)?.relation
    );
    Ok(())
}
