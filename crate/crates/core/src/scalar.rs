//! Real scalar abstraction.
//!
//! Every algorithm in this crate runs over `Complex<T>` for some `T: Real`.
//! `f64` is the production type; `f32` is supported with correspondingly
//! looser default tolerances.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the crate is generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Default relative tolerance for spectral comparisons.
    const DEFAULT_REL_TOL: f64;
    /// Default absolute floor for spectral comparisons.
    const DEFAULT_ABS_TOL: f64;
    /// Largest entry magnitude a running matrix power may reach before
    /// trace accumulation is aborted.
    const POWER_OVERFLOW_LIMIT: f64;

    /// Lossy conversion from `f64`; used for constants.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant representable")
    }

    /// Conversion from a count.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }
}

impl Real for f32 {
    const DEFAULT_REL_TOL: f64 = 1e-4;
    const DEFAULT_ABS_TOL: f64 = 1e-6;
    const POWER_OVERFLOW_LIMIT: f64 = 1e17;
}

impl Real for f64 {
    const DEFAULT_REL_TOL: f64 = 1e-8;
    const DEFAULT_ABS_TOL: f64 = 1e-12;
    const POWER_OVERFLOW_LIMIT: f64 = 1e140;
}

/// `|re| + |im|`, the cheap modulus used in convergence tests.
pub(crate) fn abs1<T: Real>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Principal argument mapped into `[0, 2π)`.
pub(crate) fn arg_positive<T: Real>(z: Complex<T>) -> T {
    let a = z.arg();
    if a < T::zero() {
        a + T::TAU()
    } else {
        a
    }
}

/// `e^{2πi k/d}`.
///
/// Quarter turns are returned exactly.
pub fn root_of_unity<T: Real>(k: usize, d: usize) -> Complex<T> {
    let k = k % d;
    if (4 * k).is_multiple_of(d) {
        let (o, z) = (T::one(), T::zero());
        return match 4 * k / d {
            0 => Complex::new(o, z),
            1 => Complex::new(z, o),
            2 => Complex::new(-o, z),
            _ => Complex::new(z, -o),
        };
    }
    let theta = T::TAU() * T::of_usize(k) / T::of_usize(d);
    Complex::from_polar(T::one(), theta)
}
