/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Logarithmic integral `li(x) = PV ∫_0^x dt / log t` for `x > 1`, by
/// Ramanujan's series.
pub fn li(x: f64) -> f64 {
    assert!(x > 1.0, "li(x) needs x > 1, got {x}");
    let l = x.ln();
    let mut sum = 0.0;
    let mut term = 1.0; // (ln x)^n / (n! 2^(n-1)), built incrementally
    let mut inner = 0.0; // Σ_{k <= (n-1)/2} 1/(2k+1)
    for n in 1..400u32 {
        term *= l / n as f64;
        if n > 1 {
            term /= 2.0;
        }
        if (n - 1) % 2 == 0 {
            inner += 1.0 / (n as f64);
        }
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let add = sign * term * inner;
        sum += add;
        if add.abs() < 1e-17 * sum.abs() && n > 10 {
            break;
        }
    }
    EULER_GAMMA + l.ln() + x.sqrt() * sum
}
