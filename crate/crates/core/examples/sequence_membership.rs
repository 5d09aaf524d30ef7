//! Beatty and Piatetski-Shapiro sequences: terms, membership and the
//! sawtooth expansion of the characteristic function.
//!
//! ```text
//! cargo run --example sequence_membership
//! ```

use bps::exactnum::RationalExponent;
use bps::sequences::{
    beatty_enumerate, char_psi_identity_residual, ps_enumerate, BeattySpec, PsSpec, SequenceSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = BeattySpec::parse("sqrt(2)", "3/10")?;
    let ps = PsSpec::new(RationalExponent::new(13, 12)?)?;
    println!("{b}: {:?}", beatty_enumerate(&b, 30).collect::<Vec<_>>());
    println!(
        "floor(n^(13/12)): {:?}",
        ps_enumerate(&ps, 30).collect::<Vec<_>>()
    );

    println!("m,in_beatty,in_ps,beatty_residual,ps_residual");
    let (sb, sp) = (SequenceSpec::Beatty(b.clone()), SequenceSpec::Ps(ps));
    for m in [1u64, 2, 99, 1_000_003, 999_999_937] {
        println!(
            "{m},{},{},{:.1e},{:.1e}",
            b.contains(m),
            ps.contains(m),
            char_psi_identity_residual(&sb, m),
            char_psi_identity_residual(&sp, m)
        );
    }
    let x = 10_000_000u64;
    let beatty_terms = beatty_enumerate(&b, x).count();
    println!(
        "terms up to {x}: Beatty {beatty_terms} (x/alpha = {:.0}), PS {} (x^(12/13) = {:.0})",
        x as f64 / 2f64.sqrt(),
        ps.count_terms_upto(x),
        (x as f64).powf(12.0 / 13.0)
    );
    Ok(())
}
