//! Finite nuclear representations `u = Σ μ_k x'_k ⊗ x_k`.
//!
//! A representation is a tensor, not an operator: distinct term lists can
//! induce the same matrix, and only the matrix is seen by the eigensolver.
//! The ambient exponent `p` enters through norms alone (functionals in
//! `l_{p'}`, vectors in `l_p`); pairing and the induced matrix ignore it.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::norms::{dual_exponent, lp_norm};
use crate::scalar::{is_finite, Real};

/// One rank-one term `μ · x' ⊗ x`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneTerm<T> {
    pub mu: Complex<T>,
    pub functional: Vec<Complex<T>>,
    pub vector: Vec<Complex<T>>,
}

impl<T: Real> RankOneTerm<T> {
    pub fn new(mu: Complex<T>, functional: Vec<Complex<T>>, vector: Vec<Complex<T>>) -> Self {
        Self { mu, functional, vector }
    }

    /// `μ · e_j' ⊗ e_i` in dimension `dim`: contributes `μ` at entry `(i, j)`.
    pub fn basis(mu: Complex<T>, dim: usize, i: usize, j: usize) -> Self {
        Self::new(mu, unit(dim, j), unit(dim, i))
    }

    /// Bilinear pairing `⟨x', x⟩ = Σ x'_i x_i`, no conjugation.
    pub fn pairing(&self) -> Complex<T> {
        self.functional.iter().zip(&self.vector).map(|(f, v)| f * v).sum()
    }
}

pub fn unit<T: Real>(dim: usize, k: usize) -> Vec<Complex<T>> {
    let mut v = vec![Complex::zero(); dim];
    v[k] = Complex::new(T::one(), T::zero());
    v
}

#[derive(Debug, Clone, PartialEq)]
pub struct NuclearRepresentation<T> {
    ambient_p: T,
    dim: usize,
    terms: Vec<RankOneTerm<T>>,
}

impl<T: Real> NuclearRepresentation<T> {
    pub fn new(ambient_p: T, dim: usize, terms: Vec<RankOneTerm<T>>) -> Result<Self> {
        dual_exponent(ambient_p)?;
        if dim == 0 {
            return Err(Error::EmptyOperator);
        }
        for (k, term) in terms.iter().enumerate() {
            if term.functional.len() != dim || term.vector.len() != dim {
                return Err(Error::InvalidRepresentation(format!(
                    "term {k}: functional/vector lengths {}/{} differ from dim {dim}",
                    term.functional.len(),
                    term.vector.len()
                )));
            }
            let finite = is_finite(term.mu) && term.functional.iter().chain(&term.vector).all(|z| is_finite(*z));
            if !finite {
                return Err(Error::NonFinite(format!("term {k}")));
            }
        }
        Ok(Self { ambient_p, dim, terms })
    }

    /// `(1/N) Σ_k e_k' ⊗ e_k`: nuclear trace 1, operator `(1/N) I_N`.
    pub fn identity_over_n(ambient_p: T, n: usize) -> Result<Self> {
        let mu = Complex::new(T::one() / T::of_usize(n), T::zero());
        let terms = (0..n).map(|k| RankOneTerm::basis(mu, n, k, k)).collect();
        Self::new(ambient_p, n, terms)
    }

    pub fn ambient_p(&self) -> T {
        self.ambient_p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[RankOneTerm<T>] {
        &self.terms
    }

    /// Term-list concatenation `u ⊕ v`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.ambient_p != other.ambient_p {
            return Err(Error::InvalidRepresentation("ambient exponents differ".into()));
        }
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Ok(Self {
            ambient_p: self.ambient_p,
            dim: self.dim,
            terms,
        })
    }

    /// `Σ_k μ_k ⟨x'_k, x_k⟩`.
    pub fn nuclear_trace(&self) -> Complex<T> {
        self.terms.iter().map(|t| t.mu * t.pairing()).sum()
    }

    /// The operator `x ↦ Σ_k μ_k ⟨x'_k, x⟩ x_k`, i.e.
    /// `M[i][j] = Σ_k μ_k x'_k[j] x_k[i]`.
    pub fn induced_operator(&self) -> Matrix<T> {
        let n = self.dim;
        let mut data = vec![Complex::<T>::zero(); n * n];
        for t in &self.terms {
            for (i, v) in t.vector.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let scaled = t.mu * v;
                for (j, f) in t.functional.iter().enumerate() {
                    data[i * n + j] = data[i * n + j] + scaled * f;
                }
            }
        }
        Matrix::new(n, data).expect("finite terms give a finite operator")
    }

    /// `(Σ_k |μ_k|^s ‖x'_k‖_{p'}^s ‖x_k‖_p^s)^{1/s}` for this
    /// representation; `s = 1` gives its nuclear-norm bound.
    pub fn s_quasinorm(&self, s: T) -> Result<T> {
        if !(s > T::zero() && s <= T::one()) {
            return Err(Error::InvalidQuasinormExponent(s.to_f64().unwrap_or(f64::NAN)));
        }
        let p = self.ambient_p;
        let q = dual_exponent(p)?;
        let weights = self
            .terms
            .iter()
            .map(|t| Ok(t.mu.norm() * lp_norm(&t.functional, q)? * lp_norm(&t.vector, p)?))
            .collect::<Result<Vec<T>>>()?;
        Ok(quasinorm_of_weights(&weights, s))
    }
}

/// `(Σ w_k^s)^{1/s}` evaluated relative to the largest weight.
pub(crate) fn quasinorm_of_weights<T: Real>(weights: &[T], s: T) -> T {
    let top = weights.iter().copied().fold(T::zero(), T::max);
    if top == T::zero() {
        return T::zero();
    }
    let sum: T = weights.iter().map(|&w| (w / top).powf(s)).sum();
    top * sum.powf(s.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{complex_normal, complex_normal_vec, rng};
    use crate::spectrum::spectrum_of;
    use crate::tolerance::Tolerance;
    use proptest::prelude::*;

    fn one() -> Complex<f64> {
        Complex::new(1.0, 0.0)
    }

    fn random_rep(dim: usize, terms: usize, seed: u64) -> NuclearRepresentation<f64> {
        let mut r = rng(seed);
        let terms = (0..terms)
            .map(|_| {
                RankOneTerm::new(
                    complex_normal(&mut r),
                    complex_normal_vec(dim, &mut r),
                    complex_normal_vec(dim, &mut r),
                )
            })
            .collect();
        NuclearRepresentation::new(2.0, dim, terms).unwrap()
    }

    #[test]
    fn single_basis_term() {
        let u = NuclearRepresentation::new(2.0, 2, vec![RankOneTerm::basis(one(), 2, 0, 0)]).unwrap();
        assert_eq!(u.nuclear_trace(), one());
        let m = u.induced_operator();
        assert_eq!(m, Matrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap());
        for s in [0.25, 0.5, 1.0] {
            assert_eq!(u.s_quasinorm(s).unwrap(), 1.0);
        }
    }

    #[test]
    fn identity_over_n_family() {
        for n in [1usize, 2, 4, 8, 16] {
            let u = NuclearRepresentation::identity_over_n(2.0, n).unwrap();
            assert!((u.nuclear_trace() - one()).norm() < 1e-15);
            let expected = Matrix::identity(n)
                .unwrap()
                .scale(Complex::new(1.0 / n as f64, 0.0))
                .unwrap();
            assert_eq!(u.induced_operator(), expected);
            assert!((u.s_quasinorm(1.0).unwrap() - 1.0).abs() < 1e-15);
        }
        // closed form (N · N^{-s})^{1/s} = N^{1/s - 1}
        let u = NuclearRepresentation::identity_over_n(2.0_f64, 4).unwrap();
        assert!((u.s_quasinorm(0.5).unwrap() - 4.0).abs() < 1e-13);
    }

    #[test]
    fn cancelling_terms_induce_zero() {
        let t1 = RankOneTerm::basis(one(), 2, 1, 0);
        let t2 = RankOneTerm::basis(-one(), 2, 1, 0);
        let u = NuclearRepresentation::new(2.0, 2, vec![t1, t2]).unwrap();
        assert_eq!(u.terms().len(), 2);
        assert_eq!(u.induced_operator(), Matrix::zeros(2).unwrap());
        assert_eq!(u.s_quasinorm(1.0).unwrap(), 2.0);
    }

    #[test]
    fn pairing_is_bilinear() {
        let i = Complex::new(0.0, 1.0);
        let t = RankOneTerm::new(one(), vec![i], vec![i]);
        // sesquilinear would give +1
        assert_eq!(t.pairing(), Complex::new(-1.0, 0.0));
    }

    #[test]
    fn trace_matches_induced_operator() {
        for seed in 0..10 {
            let u = random_rep(5, 7, seed);
            assert!((u.nuclear_trace() - u.induced_operator().trace()).norm() <= 1e-12);
        }
    }

    #[test]
    fn trace_equals_eigenvalue_sum() {
        for seed in 0..10 {
            let dim = 2 + (seed as usize * 5) % 48;
            let u = random_rep(dim, 3 + seed as usize, 100 + seed);
            let spec = spectrum_of(&u.induced_operator(), Tolerance::default()).unwrap();
            let sum = spec.power_sum(1);
            let tr = u.nuclear_trace();
            let scale = spec.l1_mass().max(1.0);
            assert!((sum - tr).norm() <= 1e-10 * scale, "dim {dim}: {sum} vs {tr}");
        }
    }

    #[test]
    fn ambient_exponent_changes_norms_only() {
        let t = RankOneTerm::new(one(), vec![one(), one()], vec![one(), one()]);
        let u1 = NuclearRepresentation::new(1.0, 2, vec![t.clone()]).unwrap();
        let u2 = NuclearRepresentation::new(2.0, 2, vec![t]).unwrap();
        assert_eq!(u1.induced_operator(), u2.induced_operator());
        assert_eq!(u1.nuclear_trace(), u2.nuclear_trace());
        // p = 1: ‖f‖_∞ ‖v‖_1 = 2; p = 2: ‖f‖_2 ‖v‖_2 = 2
        assert!((u1.s_quasinorm(1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((u2.s_quasinorm(1.0).unwrap() - 2.0).abs() < 1e-15);
        let u3 = NuclearRepresentation::new(f64::INFINITY, 2, u1.terms().to_vec()).unwrap();
        assert!((u3.s_quasinorm(1.0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(NuclearRepresentation::new(0.5, 2, vec![]).is_err());
        assert!(NuclearRepresentation::<f64>::new(2.0, 0, vec![]).is_err());
        let bad = RankOneTerm::new(one(), vec![one()], vec![one(), one()]);
        assert!(matches!(
            NuclearRepresentation::new(2.0, 2, vec![bad]),
            Err(Error::InvalidRepresentation(_))
        ));
        let u = NuclearRepresentation::identity_over_n(2.0, 2).unwrap();
        assert!(matches!(u.s_quasinorm(0.0), Err(Error::InvalidQuasinormExponent(_))));
        assert!(matches!(u.s_quasinorm(1.5), Err(Error::InvalidQuasinormExponent(_))));
    }

    proptest! {
        #[test]
        fn trace_is_additive_under_concatenation(a in 0u64..1000, b in 0u64..1000, k in 1usize..6) {
            let u = random_rep(4, k, a);
            let v = random_rep(4, 7 - k, b + 5000);
            let w = u.concat(&v).unwrap();
            let lhs = w.nuclear_trace();
            let rhs = u.nuclear_trace() + v.nuclear_trace();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
        }

        #[test]
        fn normalized_quasinorm_is_nonincreasing_in_s(
            mus in proptest::collection::vec(0.001f64..10.0, 1..10),
            s1 in 0.05f64..1.0,
            ds in 0.0f64..0.5,
        ) {
            let s2 = (s1 + ds).min(1.0);
            let dim = mus.len();
            let terms = mus.iter().enumerate()
                .map(|(k, &m)| RankOneTerm::basis(Complex::new(m, 0.0), dim, k, k))
                .collect();
            let u = NuclearRepresentation::new(2.0, dim, terms).unwrap();
            let q1 = u.s_quasinorm(s1).unwrap();
            let q2 = u.s_quasinorm(s2).unwrap();
            prop_assert!(q2 <= q1 * (1.0 + 1e-12));
        }
    }
}
