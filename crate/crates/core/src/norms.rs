use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `l_p` norm of a complex vector; `p = T::infinity()` selects the max norm.
///
/// Computed on the vector scaled by its largest modulus, so large `p`
/// neither overflows nor underflows.
pub fn lp_norm<T: Real>(v: &[Complex<T>], p: T) -> Result<T> {
    check_exponent(p)?;
    if v.is_empty() {
        return Err(Error::EmptyVector);
    }
    let max = v.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    if p.is_infinite() || max == T::zero() {
        return Ok(max);
    }
    if p == T::one() {
        return Ok(v.iter().map(|z| z.norm()).sum());
    }
    let sum: T = v.iter().map(|z| (z.norm() / max).powf(p)).sum();
    Ok(max * sum.powf(p.recip()))
}

/// Conjugate exponent `p'` with `1/p + 1/p' = 1`.
pub fn dual_exponent<T: Real>(p: T) -> Result<T> {
    check_exponent(p)?;
    Ok(if p == T::one() {
        T::infinity()
    } else if p.is_infinite() {
        T::one()
    } else {
        p / (p - T::one())
    })
}

fn check_exponent<T: Real>(p: T) -> Result<()> {
    if p >= T::one() {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p.to_f64().unwrap_or(f64::NAN)))
    }
}
