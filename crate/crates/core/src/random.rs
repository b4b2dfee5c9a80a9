//! Seeded random operators.
//!
//! All generators take an explicit `u64` seed and use ChaCha8, so the
//! same seed yields the same matrix on every platform.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::Matrix;
use crate::scalar::Real;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex normal sample (`E|z|² = 1`).
pub fn complex_normal<T: Real>(rng: &mut impl Rng) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Complex::new(T::of(re * s), T::of(im * s))
}

pub fn complex_normal_vec<T: Real>(len: usize, rng: &mut impl Rng) -> Vec<Complex<T>> {
    (0..len).map(|_| complex_normal(rng)).collect()
}

/// Matrix with i.i.d. standard complex normal entries.
pub fn gaussian_matrix<T: Real>(dim: usize, seed: u64) -> Matrix<T> {
    gaussian_matrix_from(dim, &mut rng(seed))
}

pub fn gaussian_matrix_from<T: Real>(dim: usize, rng: &mut impl Rng) -> Matrix<T> {
    Matrix::new(dim, complex_normal_vec(dim * dim, rng)).expect("finite samples")
}

/// Gaussian matrix scaled by `1/√dim`, so the spectrum fills roughly the
/// unit disc and powers stay bounded.
pub fn ginibre_matrix<T: Real>(dim: usize, seed: u64) -> Matrix<T> {
    ginibre_matrix_from(dim, &mut rng(seed))
}

pub fn ginibre_matrix_from<T: Real>(dim: usize, rng: &mut impl Rng) -> Matrix<T> {
    let g = gaussian_matrix_from::<T>(dim, rng);
    let s = T::one() / T::of_usize(dim).sqrt();
    g.scale(Complex::new(s, T::zero())).expect("finite")
}
