use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative tolerance with an absolute floor.
///
/// The effective threshold for a comparison at scale `σ` is
/// `max(abs, rel * σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    rel: T,
    abs: T,
}

impl<T: Real> Tolerance<T> {
    pub fn new(rel: T, abs: T) -> Result<Self> {
        if rel <= T::zero() || !rel.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "relative tolerance must be positive and finite, got {rel}"
            )));
        }
        if abs < T::zero() || !abs.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "absolute tolerance must be nonnegative and finite, got {abs}"
            )));
        }
        Ok(Self { rel, abs })
    }

    /// Same absolute floor, different relative tolerance.
    pub fn with_rel(self, rel: T) -> Result<Self> {
        Self::new(rel, self.abs)
    }

    pub fn rel(&self) -> T {
        self.rel
    }

    pub fn abs(&self) -> T {
        self.abs
    }

    pub fn threshold(&self, scale: T) -> T {
        self.abs.max(self.rel * scale)
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            rel: T::of(T::DEFAULT_REL_TOL),
            abs: T::of(T::DEFAULT_ABS_TOL),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_takes_the_larger_term() {
        let tol = Tolerance::new(1e-8, 1e-12).unwrap();
        assert_eq!(tol.threshold(0.0), 1e-12);
        assert_eq!(tol.threshold(1e3), 1e-5);
    }

    #[test]
    fn rejects_nonpositive_rel() {
        assert!(Tolerance::new(0.0, 1e-12).is_err());
        assert!(Tolerance::new(1e-8, -1.0).is_err());
        assert!(Tolerance::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn defaults() {
        let t = Tolerance::<f64>::default();
        assert_eq!((t.rel(), t.abs()), (1e-8, 1e-12));
    }
}
