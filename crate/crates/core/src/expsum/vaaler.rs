use std::f64::consts::PI;

use num_complex::Complex64;

use super::{e, sawtooth, ExpSumError};

/// Trigonometric approximation to `ψ` with a nonnegative majorant of the
/// error:
/// `|ψ(t) − Σ_{0<|h|<=H} a_h e(ht)| <= Σ_{|h|<=H} b_h e(ht)`.
///
/// `a_h = −φ(h/(H+1)) / (2πih)` with `φ(u) = πu(1−|u|)cot(πu) + |u|`, and
/// `b_h = (1 − |h|/(H+1)) / (2H+2)` (a scaled Fejér kernel, so the right side
/// is real and nonnegative).
#[derive(Clone, Debug, PartialEq)]
pub struct VaalerApprox {
    h_max: usize,
    /// `a_h` for `h = 1..=H`; `a_{−h} = −a_h`.
    a: Vec<Complex64>,
    /// `b_h` for `h = 0..=H`; `b_{−h} = b_h`.
    b: Vec<f64>,
}

/// Worst case of `|ψ − approx| − majorant` over a grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridCheck {
    pub points: usize,
    /// Largest `|ψ(t) − approx(t)| − majorant(t)`; should be `<= 0`.
    pub max_excess: f64,
    pub worst_t: f64,
    /// Smallest majorant value seen.
    pub min_majorant: f64,
}

fn phi(u: f64) -> f64 {
    let au = u.abs();
    PI * u * (1.0 - au) / (PI * u).tan() + au
}

/// Builds the coefficients for `H >= 1`. In debug builds the majorant
/// inequality is checked on a 1024-point grid before returning.
pub fn vaaler_build(h: usize) -> Result<VaalerApprox, ExpSumError> {
    if h == 0 {
        return Err(ExpSumError::InvalidH);
    }
    let hp1 = (h + 1) as f64;
    let a = (1..=h)
        .map(|k| {
            let k = k as f64;
            // −φ/(2πik) = i·φ/(2πk)
            Complex64::new(0.0, phi(k / hp1) / (2.0 * PI * k))
        })
        .collect();
    let b = (0..=h)
        .map(|k| (1.0 - k as f64 / hp1) / (2.0 * hp1))
        .collect();
    let v = VaalerApprox { h_max: h, a, b };
    if cfg!(debug_assertions) {
        let g = v.check_grid(1024);
        if g.max_excess > 1e-12 {
            return Err(ExpSumError::VaalerValidation {
                h,
                t: g.worst_t,
                excess: g.max_excess,
            });
        }
    }
    Ok(v)
}

impl VaalerApprox {
    pub fn h(&self) -> usize {
        self.h_max
    }

    /// `a_h` for `0 < |h| <= H`.
    pub fn a(&self, h: i64) -> Complex64 {
        assert!(h != 0 && h.unsigned_abs() as usize <= self.h_max);
        let v = self.a[h.unsigned_abs() as usize - 1];
        if h > 0 {
            v
        } else {
            -v
        }
    }

    /// `b_h` for `|h| <= H`.
    pub fn b(&self, h: i64) -> f64 {
        self.b[h.unsigned_abs() as usize]
    }

    /// `Σ_{0<|h|<=H} a_h e(ht)`, which is real.
    pub fn approx(&self, t: f64) -> f64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (k, a) in self.a.iter().enumerate() {
            let h = (k + 1) as f64;
            let w = e(h * t);
            z += a * w - a * w.conj();
        }
        z.re
    }

    /// `Σ_{|h|<=H} b_h e(ht) = b_0 + 2 Σ_{h>=1} b_h cos(2πht)`.
    pub fn majorant(&self, t: f64) -> f64 {
        let mut s = self.b[0];
        for (k, b) in self.b.iter().enumerate().skip(1) {
            s += 2.0 * b * e(k as f64 * t).re;
        }
        s
    }

    /// Evaluates the inequality at `t = i/points`, `i = 0..points`.
    pub fn check_grid(&self, points: usize) -> GridCheck {
        let mut out = GridCheck {
            points,
            max_excess: f64::NEG_INFINITY,
            worst_t: 0.0,
            min_majorant: f64::INFINITY,
        };
        for i in 0..points {
            let t = i as f64 / points as f64;
            let err = (sawtooth(t) - self.approx(t)).abs();
            let maj = self.majorant(t);
            if err - maj > out.max_excess {
                out.max_excess = err - maj;
                out.worst_t = t;
            }
            out.min_majorant = out.min_majorant.min(maj);
        }
        out
    }
}
