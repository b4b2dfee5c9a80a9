//! Fredholm determinant coefficients.
//!
//! Sign convention: `det(I − zT) = Σ_n (−1)^n α_n z^n`, so `α_n` is the
//! `n`-th elementary symmetric function of the eigenvalues.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::spectrum::SpectrumMultiset;
use crate::tolerance::Tolerance;
use crate::traces::TraceSequence;

#[derive(Debug, Clone, PartialEq)]
pub struct DetCoefficients<T> {
    alpha: Vec<Complex<T>>,
}

impl<T: Real> DetCoefficients<T> {
    /// `α_0, α_1, …`; `α_0` must be exactly one.
    pub fn new(alpha: Vec<Complex<T>>) -> Result<Self> {
        if alpha.first() != Some(&Complex::one()) {
            return Err(crate::Error::InvalidParameter("alpha[0] must be exactly 1".into()));
        }
        if alpha.iter().any(|z| !crate::scalar::is_finite(*z)) {
            return Err(crate::Error::NonFinite("determinant coefficient".into()));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> &[Complex<T>] {
        &self.alpha
    }

    pub fn get(&self, n: usize) -> Option<Complex<T>> {
        self.alpha.get(n).copied()
    }

    /// Largest index held.
    pub fn n_max(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn max_abs(&self) -> T {
        self.alpha.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Coefficients of `z^n` in `det(I − zT)`, i.e. `(−1)^n α_n`.
    pub fn polynomial(&self) -> Vec<Complex<T>> {
        self.alpha
            .iter()
            .enumerate()
            .map(|(n, &a)| if n % 2 == 0 { a } else { -a })
            .collect()
    }
}

/// Newton recursion
/// `α_n = (1/n) Σ_{j=1}^{n} (−1)^{j−1} s_j α_{n−j}`.
pub fn det_coeffs_from_traces<T: Real>(s: &TraceSequence<T>) -> DetCoefficients<T> {
    let traces = s.values();
    let mut alpha = Vec::with_capacity(traces.len() + 1);
    alpha.push(Complex::one());
    for n in 1..=traces.len() {
        let mut acc = Complex::<T>::zero();
        for j in 1..=n {
            let term = traces[j - 1] * alpha[n - j];
            acc = if j % 2 == 1 { acc + term } else { acc - term };
        }
        alpha.push(acc / T::of_usize(n));
    }
    DetCoefficients { alpha }
}

/// `Σ (−1)^n α_n z^n` by Horner's rule.
pub fn det_eval_series<T: Real>(c: &DetCoefficients<T>, z: Complex<T>) -> Complex<T> {
    c.polynomial().iter().rev().fold(Complex::zero(), |acc, &a| acc * z + a)
}

/// `e^{−z·tr} Π ((1 − zλ) e^{zλ})^m`; the exponents are summed before
/// exponentiating so they cancel exactly when `tr = Σ mλ`.
pub fn det_eval_product<T: Real>(spec: &SpectrumMultiset<T>, tr: Complex<T>, z: Complex<T>) -> Complex<T> {
    let mut exponent = -z * tr;
    let mut product = Complex::<T>::one();
    for &(lambda, m) in spec.values() {
        exponent = exponent + z * lambda * T::of_usize(m);
        product = product * (Complex::<T>::one() - z * lambda).powu(m as u32);
    }
    product * exponent.exp()
}

/// Nonzero eigenvalues recovered as inverses of the determinant's zeros.
///
/// Trailing coefficients below `tol.threshold(max|α|)` are dropped; the
/// remaining reversed polynomial `λ^D − α_1 λ^{D−1} + α_2 λ^{D−2} − …` is
/// solved through its companion matrix.
pub fn inverse_zeros<T: Real>(c: &DetCoefficients<T>, tol: Tolerance<T>) -> Result<SpectrumMultiset<T>> {
    let thr = tol.threshold(c.max_abs());
    let degree = c.alpha.iter().rposition(|a| a.norm() > thr).unwrap_or(0);
    if degree == 0 {
        return Ok(SpectrumMultiset::empty());
    }
    // monic λ^D + Σ_k b_k λ^{D−k} with b_k = (−1)^k α_k
    let b: Vec<Complex<T>> = c.polynomial()[1..=degree].to_vec();
    let companion = companion_matrix(&b)?;
    let roots = crate::eigen::eigenvalues(&companion)?;
    let reference = roots.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    SpectrumMultiset::from_computed(&roots, tol, reference)
}

/// Zeros of `det(I − zT)` with multiplicities.
pub fn det_zeros<T: Real>(c: &DetCoefficients<T>, tol: Tolerance<T>) -> Result<SpectrumMultiset<T>> {
    let lambdas = inverse_zeros(c, tol)?;
    let pairs: Vec<_> = lambdas
        .values()
        .iter()
        .map(|&(l, m)| (Complex::<T>::one() / l, m))
        .collect();
    SpectrumMultiset::from_weighted(&pairs, tol)
}

/// Companion matrix of `λ^D + b_1 λ^{D−1} + … + b_D`: first row `−b`,
/// ones on the subdiagonal.
pub fn companion_matrix<T: Real>(b: &[Complex<T>]) -> Result<Matrix<T>> {
    let d = b.len();
    Matrix::from_fn(d, |i, j| {
        if i == 0 {
            -b[j]
        } else if i == j + 1 {
            Complex::one()
        } else {
            Complex::zero()
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DEvenCheck<T> {
    pub verdict: bool,
    /// First `n` with `d ∤ n` and `|α_n|` above threshold.
    pub first_violation: Option<(usize, Complex<T>)>,
    pub threshold: T,
}

/// Whether only exponents divisible by `d` survive in the series.
pub fn d_even_check<T: Real>(c: &DetCoefficients<T>, d: usize, tol: Tolerance<T>) -> Result<DEvenCheck<T>> {
    if d < 2 {
        return Err(crate::Error::InvalidOrder(d));
    }
    let threshold = tol.threshold(c.max_abs());
    let first_violation = c
        .alpha
        .iter()
        .enumerate()
        .find(|&(n, a)| n % d != 0 && a.norm() > threshold)
        .map(|(n, &a)| (n, a));
    Ok(DEvenCheck {
        verdict: first_violation.is_none(),
        first_violation,
        threshold,
    })
}
