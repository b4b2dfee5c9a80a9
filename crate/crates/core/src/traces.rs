use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{is_finite, Real};

/// Power traces `s_n = trace(T^n)` for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSequence<T> {
    values: Vec<Complex<T>>,
    source_dim: usize,
}

impl<T: Real> TraceSequence<T> {
    pub fn new(values: Vec<Complex<T>>, source_dim: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("trace sequence needs n_max >= 1".into()));
        }
        if source_dim == 0 {
            return Err(Error::EmptyOperator);
        }
        if let Some(k) = values.iter().position(|z| !is_finite(*z)) {
            return Err(Error::NonFinite(format!("trace s_{}", k + 1)));
        }
        Ok(Self { values, source_dim })
    }

    /// `s_n`, 1-based.
    pub fn get(&self, n: usize) -> Option<Complex<T>> {
        n.checked_sub(1).and_then(|k| self.values.get(k)).copied()
    }

    pub fn n_max(&self) -> usize {
        self.values.len()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    /// `s_1, s_2, …` in order.
    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// `(n, s_n)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex<T>)> + '_ {
        self.values.iter().enumerate().map(|(k, z)| (k + 1, *z))
    }
}

/// `trace(T^n)` for `n = 1..=n_max` by repeated multiplication.
///
/// Eigenvalues are never consulted, so the result can be checked against
/// eigenvalue power sums. Aborts with [`Error::PowerOverflow`] as soon as
/// an entry of the running power exceeds [`Real::POWER_OVERFLOW_LIMIT`].
pub fn power_traces<T: Real>(t: &Matrix<T>, n_max: usize) -> Result<TraceSequence<T>> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let limit = T::of(T::POWER_OVERFLOW_LIMIT);
    let mut values = Vec::with_capacity(n_max);
    let mut power = t.clone();
    for n in 1..=n_max {
        if n > 1 {
            power = power.matmul_unchecked(t);
        }
        let big = power.max_abs_entry();
        if big.is_nan() || big > limit {
            return Err(Error::PowerOverflow {
                power: n,
                magnitude: big.to_f64().unwrap_or(f64::INFINITY),
            });
        }
        values.push(power.trace());
    }
    TraceSequence::new(values, t.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::gaussian_matrix;
    use crate::spectrum::spectrum_of;
    use crate::tolerance::Tolerance;

    fn re(xs: &[f64]) -> Vec<Complex<f64>> {
        xs.iter().map(|&x| Complex::new(x, 0.0)).collect()
    }

    #[test]
    fn identity_traces() {
        let s = power_traces(&Matrix::<f64>::identity(2).unwrap(), 3).unwrap();
        assert_eq!(s.values(), re(&[2.0, 2.0, 2.0]).as_slice());
        assert_eq!(s.get(0), None);
        assert_eq!(s.get(3), Some(Complex::new(2.0, 0.0)));
        assert_eq!(s.get(4), None);
    }

    #[test]
    fn nilpotent_traces_vanish() {
        let j = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(power_traces(&j, 4).unwrap().values(), re(&[0.0; 4]).as_slice());
    }

    #[test]
    fn central_symmetric_diagonal_has_vanishing_odd_traces() {
        let d = Matrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert_eq!(
            power_traces(&d, 4).unwrap().values(),
            re(&[0.0, 2.0, 0.0, 2.0]).as_slice()
        );
    }

    #[test]
    fn random_traces_match_eigenvalue_power_sums() {
        let t = gaussian_matrix::<f64>(5, 2024);
        let spec = spectrum_of(&t, Tolerance::default()).unwrap();
        let s = power_traces(&t, 12).unwrap();
        for (n, sn) in s.iter() {
            let oracle = spec.power_sum(n as u32);
            let rel = (sn - oracle).norm() / oracle.norm().max(1.0);
            assert!(rel <= 1e-8, "n={n}: {sn} vs {oracle}");
        }
    }

    #[test]
    fn overflow_is_reported() {
        let big = Matrix::diagonal(&[Complex::new(1e10, 0.0)]).unwrap();
        match power_traces(&big, 20) {
            Err(Error::PowerOverflow { power, .. }) => assert_eq!(power, 15),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn zero_n_max_is_rejected() {
        assert!(power_traces(&Matrix::<f64>::identity(1).unwrap(), 0).is_err());
    }
}
