//! Number formatting for emitted series and reports.

use num_complex::Complex;

/// 17 significant digits in exponent form; `-0` is written as `0`.
pub fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// `re,im` pair.
pub fn complex(z: Complex<f64>) -> String {
    format!("{},{}", num(z.re), num(z.im))
}
