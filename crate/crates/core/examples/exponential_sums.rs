//! `Σ Λ(n) e(f(n))` for a few phases, the van der Corput envelope and the
//! Type I / Type II bilinear sums, each with the ratio to its envelope.
//!
//! ```text
//! cargo run --release --example exponential_sums
//! ```

use bps::exactnum::QuadraticSurd;
use bps::expsum::{
    lambda_dyadic_max, lambda_expsum, lambda_sum_envelope, type_sum_grid, vdc_bound_check, Coeffs,
    EnvelopeRow, MonomialPhase, PhaseSpec, SumKind, VdcOrder,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sqrt2: QuadraticSurd = "sqrt(2)".parse()?;
    let linear = PhaseSpec::linear(&sqrt2);
    println!("x,|sum Lambda(n) e(sqrt(2) n)|/x");
    for x in [10_000u64, 100_000, 1_000_000, 10_000_000] {
        println!(
            "{x},{:.3e}",
            lambda_expsum(&linear, 0, x)?.norm() / x as f64
        );
    }

    let gamma = 12.0 / 13.0;
    let phase = PhaseSpec::new(1, gamma, 0.0, 0.0);
    println!("{}", EnvelopeRow::CSV_HEADER);
    for x in [100_000u64, 1_000_000, 10_000_000] {
        let (m, _) = lambda_dyadic_max(&phase, x)?;
        let env = lambda_sum_envelope(1, gamma, x as f64);
        let row = EnvelopeRow {
            lemma: "lambda-dyadic-max".into(),
            params: format!("h=1 gamma=12/13 x={x}"),
            direct_value: m,
            envelope: env,
            ratio: m / env,
        };
        println!("{}", row.csv_row());
    }
    let mono = MonomialPhase {
        coeff: 1.0,
        exponent: gamma,
    };
    for a in [10_000u64, 100_000, 1_000_000] {
        for order in [VdcOrder::Second, VdcOrder::Third] {
            println!("{}", vdc_bound_check(mono, a, order, 10.0)?.row().csv_row());
        }
    }
    let xs = [100_000u64, 1_000_000, 10_000_000];
    for r in type_sum_grid(
        SumKind::TypeI,
        &[1],
        &xs,
        gamma,
        &Coeffs::Ones,
        &Coeffs::Ones,
    )? {
        println!("{}", r.row().csv_row());
    }
    for r in type_sum_grid(
        SumKind::TypeII,
        &[1],
        &xs,
        gamma,
        &Coeffs::Mobius,
        &Coeffs::Mobius,
    )? {
        println!("{}", r.row().csv_row());
    }
    Ok(())
}
