//! Test operators with known spectra.

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::Rng;

use crate::eigen::operator_norm_2;
use crate::error::{Error, Result};
use crate::fredholm::companion_matrix;
use crate::matrix::Matrix;
use crate::nuclear::{NuclearRepresentation, RankOneTerm};
use crate::random::{complex_normal_vec, gaussian_matrix, ginibre_matrix, rng};
use crate::scalar::Real;
use crate::spectrum::{spectrum_of, SpectrumMultiset};
use crate::tolerance::Tolerance;

/// `d×d` cyclic shift with `C[i][(i+1) mod d] = 1`.
pub fn cyclic_shift<T: Real>(d: usize) -> Result<Matrix<T>> {
    Matrix::from_fn(d, |i, j| {
        if j == (i + 1) % d {
            Complex::one()
        } else {
            Complex::zero()
        }
    })
}

/// `A ⊗ C_d`: every eigenvalue `λ` of `A` becomes the full orbit
/// `{λ ω^j}` with `ω = e^{2πi/d}`.
pub fn kronecker_symmetrize<T: Real>(a: &Matrix<T>, d: usize) -> Result<Matrix<T>> {
    if d < 2 {
        return Err(Error::InvalidOrder(d));
    }
    Ok(a.kron(&cyclic_shift(d)?))
}

/// Monic coefficients `b_1 … b_n` of `Π (z − λ_i)`, highest degree first,
/// by multiplying in one root at a time.
pub fn monic_coefficients<T: Real>(roots: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut poly = vec![Complex::<T>::one()];
    for &r in roots {
        poly.push(Complex::zero());
        for k in (1..poly.len()).rev() {
            poly[k] = poly[k] - r * poly[k - 1];
        }
    }
    poly.split_off(1)
}

/// Companion matrix of the characteristic polynomial of `spec`.
pub fn from_spectrum<T: Real>(spec: &SpectrumMultiset<T>) -> Result<Matrix<T>> {
    if spec.total_multiplicity() == 0 {
        return Err(Error::EmptyOperator);
    }
    companion_matrix(&monic_coefficients(&spec.expanded()))
}

/// `T + eps·R` with `R` a seeded standard complex Gaussian matrix.
pub fn perturb_break_symmetry<T: Real>(t: &Matrix<T>, eps: T, seed: u64) -> Result<Matrix<T>> {
    if eps < T::zero() || !eps.is_finite() {
        return Err(Error::InvalidParameter("eps must be finite and nonnegative".into()));
    }
    if eps == T::zero() {
        return Ok(t.clone());
    }
    let r = gaussian_matrix::<T>(t.dim(), seed);
    t.add(&r.scale(Complex::new(eps, T::zero()))?)
}

/// Householder reflection `I − 2 v vᴴ / ‖v‖²`; unitary and its own inverse.
pub fn householder<T: Real>(v: &[Complex<T>]) -> Result<Matrix<T>> {
    let norm_sqr: T = v.iter().map(|z| z.norm_sqr()).sum();
    if v.is_empty() {
        return Err(Error::EmptyVector);
    }
    if norm_sqr <= T::zero() || !norm_sqr.is_finite() {
        return Err(Error::InvalidParameter(
            "reflection vector must be nonzero and finite".into(),
        ));
    }
    let two = T::of(2.0) / norm_sqr;
    Matrix::from_fn(v.len(), |i, j| {
        let delta: Complex<T> = if i == j { Complex::one() } else { Complex::zero() };
        delta - v[i] * v[j].conj() * two
    })
}

/// `Q T Q` for a seeded Householder reflection `Q`.
pub fn unitary_similarity<T: Real>(t: &Matrix<T>, seed: u64) -> Result<Matrix<T>> {
    let q = householder(&complex_normal_vec::<T>(t.dim(), &mut rng(seed)))?;
    q.matmul(t)?.matmul(&q)
}

/// Jordan block `J_m(λ)`: `λ` on the diagonal, ones above it.
pub fn jordan_block<T: Real>(lambda: Complex<T>, m: usize) -> Result<Matrix<T>> {
    Matrix::from_fn(m, |i, j| {
        if i == j {
            lambda
        } else if j == i + 1 {
            Complex::one()
        } else {
            Complex::zero()
        }
    })
}

/// Nonzero eigenvalues drawn from the annulus `0.3 ≤ |λ| ≤ 1.5`, pairwise
/// at least `0.25` apart.
fn separated_eigenvalues<T: Real>(count: usize, r: &mut impl Rng) -> Vec<Complex<T>> {
    let mut out: Vec<Complex<f64>> = Vec::with_capacity(count);
    while out.len() < count {
        let z = Complex::from_polar(r.random_range(0.3..1.5), r.random_range(0.0..std::f64::consts::TAU));
        if out.iter().all(|w| (w - z).norm() >= 0.25) {
            out.push(z);
        }
    }
    out.into_iter()
        .map(|z| Complex::new(T::of(z.re), T::of(z.im)))
        .collect()
}

/// A seeded operator with Jordan structure: blocks of size 1 to 4 at
/// well separated nonzero eigenvalues, optionally one nilpotent block,
/// hidden by a unitary similarity. Returns the operator and its exact
/// nonzero eigenvalues.
pub fn jordan_case<T: Real>(seed: u64, max_dim: usize) -> Result<(Matrix<T>, Vec<Complex<T>>)> {
    let mut r = rng(seed);
    let max_dim = max_dim.max(2);
    let mut sizes = Vec::new();
    let mut dim = 0;
    loop {
        let m = r.random_range(1..=4usize).min(max_dim - dim);
        sizes.push(m);
        dim += m;
        if dim >= max_dim || (dim >= 2 && r.random_bool(0.3)) {
            break;
        }
    }
    let nilpotent = sizes.len() > 1 && r.random_bool(0.25);
    let lambdas = separated_eigenvalues::<T>(sizes.len(), &mut r);
    let mut blocks = Vec::new();
    let mut nonzero = Vec::new();
    for (k, &m) in sizes.iter().enumerate() {
        let lambda = if nilpotent && k == 0 {
            Complex::zero()
        } else {
            lambdas[k]
        };
        blocks.push(jordan_block(lambda, m)?);
        if !lambda.is_zero() {
            nonzero.extend(std::iter::repeat_n(lambda, m));
        }
    }
    let j = blocks
        .into_iter()
        .reduce(|a, b| a.direct_sum(&b))
        .expect("at least one block");
    Ok((unitary_similarity(&j, seed ^ 0x5eed)?, nonzero))
}

/// A seeded ℤ_d-symmetric operator: `A ⊗ C_d` for a Ginibre `A`, hidden
/// by a unitary similarity so its traces are not exactly zero.
pub fn symmetric_case<T: Real>(base_dim: usize, d: usize, seed: u64) -> Result<Matrix<T>> {
    let t = kronecker_symmetrize(&ginibre_matrix::<T>(base_dim, seed), d)?;
    unitary_similarity(&t, seed.wrapping_add(1))
}

/// [`symmetric_case`] plus an `eps` Gaussian perturbation.
pub fn broken_case<T: Real>(base_dim: usize, d: usize, eps: T, seed: u64) -> Result<Matrix<T>> {
    perturb_break_symmetry(&symmetric_case(base_dim, d, seed)?, eps, seed.wrapping_add(2))
}

/// Quasinorm exponents recorded by default for the defect family.
pub fn default_s_grid<T: Real>() -> Vec<T> {
    [0.5, 2.0 / 3.0, 0.75, 1.0].iter().map(|&s| T::of(s)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefectFamilyPoint<T> {
    pub n: usize,
    pub nuclear_trace: Complex<T>,
    pub trace_square: Complex<T>,
    pub op_norm: T,
    pub spectral_radius: T,
    /// `(s, quasinorm)` of the diagonal part of the canonical
    /// representation.
    pub s_quasinorms: Vec<(T, T)>,
    pub eigen_l1_mass: T,
}

/// Exact values of the defect family at size `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefectClosedForm {
    pub nuclear_trace: Ratio<i64>,
    pub trace_square: Ratio<i64>,
    pub op_norm: Ratio<i64>,
    pub spectral_radius: Ratio<i64>,
    pub eigen_l1_mass: Ratio<i64>,
}

fn check_family_size(n: usize) -> Result<i64> {
    match i64::try_from(n) {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(Error::InvalidParameter(format!(
            "family size must be at least 1, got {n}"
        ))),
    }
}

/// Rational coefficients of the canonical representation of `T_N`:
/// `(μ, functional index, vector index)`, the last term nilpotent.
fn exact_terms(n: usize) -> Result<Vec<(Ratio<i64>, usize, usize)>> {
    let mu = Ratio::new(1, check_family_size(n)?);
    let mut terms: Vec<_> = (0..n).map(|k| (mu, k, k)).collect();
    terms.push((mu, n + 1, n));
    Ok(terms)
}

/// Closed forms by rational arithmetic on the canonical representation.
pub fn defect_closed_form(n: usize) -> Result<DefectClosedForm> {
    let terms = exact_terms(n)?;
    let nuclear_trace = terms.iter().filter(|t| t.1 == t.2).map(|t| t.0).sum::<Ratio<i64>>();
    // the nilpotent term squares to zero, so only diagonal terms survive
    let trace_square = terms
        .iter()
        .filter(|t| t.1 == t.2)
        .map(|t| t.0 * t.0)
        .sum::<Ratio<i64>>();
    let diagonal_max = terms
        .iter()
        .filter(|t| t.1 == t.2)
        .map(|t| t.0)
        .max()
        .unwrap_or_else(Ratio::zero);
    let nilpotent_max = terms
        .iter()
        .filter(|t| t.1 != t.2)
        .map(|t| t.0)
        .max()
        .unwrap_or_else(Ratio::zero);
    Ok(DefectClosedForm {
        nuclear_trace,
        trace_square,
        op_norm: diagonal_max.max(nilpotent_max),
        spectral_radius: diagonal_max,
        eigen_l1_mass: nuclear_trace,
    })
}

/// The canonical representation of `T_N = (1/N) I_N ⊕ (1/N) J_2`: one term
/// `(1/N) e_k ⊗ e_k` per diagonal entry and one nilpotent term
/// `(1/N) e_{N+1}' ⊗ e_N`, in ambient `l_p`.
pub fn shrinking_family_representation<T: Real>(n: usize, ambient_p: T) -> Result<NuclearRepresentation<T>> {
    let dim = n + 2;
    let terms = exact_terms(n)?
        .into_iter()
        .map(|(mu, f, v)| {
            let mu = T::of(*mu.numer() as f64) / T::of(*mu.denom() as f64);
            RankOneTerm::basis(Complex::new(mu, T::zero()), dim, v, f)
        })
        .collect();
    NuclearRepresentation::new(ambient_p, dim, terms)
}

fn diagonal_part<T: Real>(u: &NuclearRepresentation<T>) -> Result<NuclearRepresentation<T>> {
    let diagonal = u
        .terms()
        .iter()
        .filter(|t| t.pairing() != Complex::zero())
        .cloned()
        .collect();
    NuclearRepresentation::new(u.ambient_p(), u.dim(), diagonal)
}

/// `T_N` with its measured family point, quasinorms at [`default_s_grid`].
pub fn trace_one_shrinking_family<T: Real>(n: usize) -> Result<(Matrix<T>, DefectFamilyPoint<T>)> {
    trace_one_shrinking_family_with(n, &default_s_grid())
}

/// `T_N` with its measured family point, quasinorms at `s_grid`.
pub fn trace_one_shrinking_family_with<T: Real>(n: usize, s_grid: &[T]) -> Result<(Matrix<T>, DefectFamilyPoint<T>)> {
    let u = shrinking_family_representation(n, T::of(2.0))?;
    let t = u.induced_operator();
    let diagonal = diagonal_part(&u)?;
    let s_quasinorms = s_grid
        .iter()
        .map(|&s| Ok((s, diagonal.s_quasinorm(s)?)))
        .collect::<Result<Vec<_>>>()?;
    let spec = spectrum_of(&t, Tolerance::default())?;
    let point = DefectFamilyPoint {
        n,
        nuclear_trace: u.nuclear_trace(),
        trace_square: t.matmul(&t)?.trace(),
        op_norm: operator_norm_2(&t)?,
        spectral_radius: spec.scale(),
        s_quasinorms,
        eigen_l1_mass: spec.l1_mass(),
    };
    Ok((t, point))
}

/// One family point per `N`, each carrying the quasinorms at `s_grid`.
pub fn quasinorm_sweep<T: Real>(
    family: impl Fn(usize, &[T]) -> Result<DefectFamilyPoint<T>>,
    s_grid: &[T],
    n_grid: &[usize],
) -> Result<Vec<DefectFamilyPoint<T>>> {
    if s_grid.is_empty() || n_grid.is_empty() {
        return Err(Error::InvalidParameter("sweep grids must be nonempty".into()));
    }
    if let Some(&s) = s_grid.iter().find(|&&s| !(s > T::zero() && s <= T::one())) {
        return Err(Error::InvalidQuasinormExponent(s.to_f64().unwrap_or(f64::NAN)));
    }
    n_grid.iter().map(|&n| family(n, s_grid)).collect()
}

/// The shrinking family as a sweep generator.
pub fn shrinking_family_point<T: Real>(n: usize, s_grid: &[T]) -> Result<DefectFamilyPoint<T>> {
    trace_one_shrinking_family_with(n, s_grid).map(|(_, p)| p)
}

/// Least-squares slope of `ln q_s(N)` against `ln N` for the `k`-th
/// exponent of each point.
pub fn log_log_slope<T: Real>(table: &[DefectFamilyPoint<T>], k: usize) -> Result<T> {
    let pairs = table
        .iter()
        .map(|p| {
            p.s_quasinorms
                .get(k)
                .map(|&(_, q)| (T::of_usize(p.n).ln(), q.ln()))
                .ok_or_else(|| Error::InvalidParameter(format!("no exponent at index {k}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if pairs.len() < 2 {
        return Err(Error::InvalidParameter("slope needs at least two sizes".into()));
    }
    let len = T::of_usize(pairs.len());
    let mx = pairs.iter().map(|p| p.0).sum::<T>() / len;
    let my = pairs.iter().map(|p| p.1).sum::<T>() / len;
    let sxy: T = pairs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: T = pairs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == T::zero() {
        return Err(Error::InvalidParameter("slope needs two distinct sizes".into()));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::ginibre_matrix;
    use crate::scalar::root_of_unity;
    use crate::spectrum::multiset_equal;
    use crate::symmetry::{central_symmetry, equivalence_harness, trace_criterion, zd_symmetric_spectrum};
    use crate::traces::power_traces;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn ms(values: &[Complex<f64>]) -> SpectrumMultiset<f64> {
        SpectrumMultiset::from_values(values, tol()).unwrap()
    }

    #[test]
    fn kronecker_scalar_examples() {
        let t = kronecker_symmetrize(&Matrix::from_real_rows(&[vec![3.0]]).unwrap(), 2).unwrap();
        let s = spectrum_of(&t, tol()).unwrap();
        assert!(multiset_equal(&s, &ms(&[c(3.0, 0.0), c(-3.0, 0.0)]), tol()).equal);
        let t = kronecker_symmetrize(&Matrix::from_real_rows(&[vec![2.0]]).unwrap(), 3).unwrap();
        let w = root_of_unity::<f64>(1, 3);
        let want = ms(&[c(2.0, 0.0), w * 2.0, w * w * 2.0]);
        assert!(multiset_equal(&spectrum_of(&t, tol()).unwrap(), &want, tol()).equal);
        assert!(kronecker_symmetrize(&t, 1).is_err());
    }

    #[test]
    fn kronecker_random_d4() {
        let t = kronecker_symmetrize(&ginibre_matrix(3, 8), 4).unwrap();
        assert!(
            zd_symmetric_spectrum(&spectrum_of(&t, tol()).unwrap(), 4, tol())
                .unwrap()
                .verdict
        );
        assert!(
            trace_criterion(&power_traces(&t, 48).unwrap(), 4, 0, tol())
                .unwrap()
                .verdict
        );
    }

    #[test]
    fn kronecker_passes_own_d_and_fails_non_divisors() {
        for seed in 0..5 {
            for d in 2..=4 {
                let t = symmetric_case::<f64>(3, d, seed).unwrap();
                assert_eq!(
                    equivalence_harness(&t, d, tol()).unwrap().verdicts(),
                    (true, true, true)
                );
                for dp in 2..=6 {
                    if d % dp != 0 {
                        let r = equivalence_harness(&t, dp, tol()).unwrap();
                        assert_eq!(r.verdicts(), (false, false, false), "d {d} d' {dp}");
                    }
                }
            }
        }
    }

    #[test]
    fn companion_examples() {
        let m = from_spectrum(&ms(&[c(1.0, 0.0), c(-1.0, 0.0)])).unwrap();
        assert_eq!(m, Matrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap());
        let zero = SpectrumMultiset::from_weighted(&[(c(0.0, 0.0), 3)], tol()).unwrap();
        let m = from_spectrum(&zero).unwrap();
        assert_eq!(m.pow(3), Matrix::zeros(3).unwrap());
        assert_ne!(m.pow(2), Matrix::zeros(3).unwrap());
        assert!(from_spectrum(&SpectrumMultiset::<f64>::empty()).is_err());
    }

    #[test]
    fn companion_round_trip() {
        let loose = Tolerance::new(1e-6, 1e-12).unwrap();
        for seed in 0..20 {
            let values = separated_eigenvalues::<f64>(6, &mut rng(seed));
            let spec = ms(&values);
            let back = spectrum_of(&from_spectrum(&spec).unwrap(), loose).unwrap();
            assert!(multiset_equal(&back, &spec, loose).equal, "seed {seed}");
        }
    }

    #[test]
    fn perturbation_breaks_and_zero_perturbation_is_identity() {
        let t = kronecker_symmetrize(&ginibre_matrix(3, 1), 2).unwrap();
        assert_eq!(perturb_break_symmetry(&t, 0.0, 9).unwrap(), t);
        assert!(central_symmetry(&t, tol()).unwrap().verdict());
        let broken = perturb_break_symmetry(&t, 0.1, 9).unwrap();
        let r = central_symmetry(&broken, tol()).unwrap();
        assert!(!r.verdict() && !r.trace.verdict && r.trace.witness.is_some());
        let tiny = perturb_break_symmetry(&t, 1e-14, 9).unwrap();
        assert!(central_symmetry(&tiny, tol()).unwrap().verdict());
        assert!(perturb_break_symmetry(&t, -1.0, 9).is_err());
    }

    #[test]
    fn householder_is_an_involution() {
        let v = complex_normal_vec::<f64>(5, &mut rng(3));
        let q = householder(&v).unwrap();
        let qq = q.matmul(&q).unwrap();
        let id = Matrix::<f64>::identity(5).unwrap();
        for (a, b) in qq.as_slice().iter().zip(id.as_slice()) {
            assert!((a - b).norm() < 1e-14);
        }
        assert!(householder(&[c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn monic_expansion() {
        // (z - 1)(z - 2) = z² - 3z + 2
        assert_eq!(
            monic_coefficients(&[c(1.0, 0.0), c(2.0, 0.0)]),
            vec![c(-3.0, 0.0), c(2.0, 0.0)]
        );
    }

    #[test]
    fn jordan_cases_have_declared_spectrum() {
        for seed in 0..10 {
            let (t, nonzero) = jordan_case::<f64>(seed, 8).unwrap();
            assert!(t.dim() >= 2 && t.dim() <= 8);
            let tr: Complex<f64> = nonzero.iter().sum();
            assert!((t.trace() - tr).norm() < 1e-12);
        }
    }

    #[test]
    fn defect_family_base_case() {
        let (t, p) = trace_one_shrinking_family::<f64>(1).unwrap();
        assert_eq!(t.dim(), 3);
        assert_eq!(p.nuclear_trace, c(1.0, 0.0));
        assert_eq!(p.trace_square, c(1.0, 0.0));
        assert!((p.op_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn defect_family_closed_forms() {
        let (_, p) = trace_one_shrinking_family::<f64>(100).unwrap();
        assert!((p.nuclear_trace - c(1.0, 0.0)).norm() <= 1e-12);
        assert!((p.trace_square.re - 0.01).abs() <= 1e-14);
        assert!((p.spectral_radius - 0.01).abs() <= 1e-12);
        assert!((p.op_norm - 0.01).abs() <= 1e-12);
        assert!((p.eigen_l1_mass - 1.0).abs() <= 1e-10);
        let (s, q) = p.s_quasinorms[1];
        assert!((s - 2.0 / 3.0).abs() < 1e-15);
        assert!((q - 10.0).abs() < 1e-10);
        let exact = defect_closed_form(100).unwrap();
        assert_eq!(exact.nuclear_trace, Ratio::one());
        assert_eq!(exact.trace_square, Ratio::new(1, 100));
        assert_eq!(exact.spectral_radius, Ratio::new(1, 100));
        assert_eq!(exact.op_norm, Ratio::new(1, 100));
        assert_eq!(exact.eigen_l1_mass, Ratio::one());
        assert!(defect_closed_form(0).is_err());
    }

    #[test]
    fn family_representation_matches_operator() {
        let u = shrinking_family_representation::<f64>(3, 2.0).unwrap();
        let t = u.induced_operator();
        let third = c(1.0 / 3.0, 0.0);
        let expected = Matrix::identity(3)
            .unwrap()
            .scale(third)
            .unwrap()
            .direct_sum(&jordan_block(c(0.0, 0.0), 2).unwrap().scale(third).unwrap());
        assert_eq!(t, expected);
    }

    #[test]
    fn sweep_closed_forms() {
        let s_grid = [2.0 / 3.0, 1.0];
        let table = quasinorm_sweep(shrinking_family_point::<f64>, &s_grid, &[4, 16, 64]).unwrap();
        let column: Vec<f64> = table.iter().map(|p| p.s_quasinorms[0].1).collect();
        for (q, want) in column.iter().zip([2.0, 4.0, 8.0]) {
            assert!((q - want).abs() < 1e-12, "{q}");
        }
        for p in &table {
            assert!((p.s_quasinorms[1].1 - 1.0).abs() < 1e-12);
        }
        assert!((log_log_slope(&table, 0).unwrap() - 0.5).abs() < 1e-6);
        assert!(log_log_slope(&table, 1).unwrap().abs() < 1e-6);
        assert!(quasinorm_sweep(shrinking_family_point::<f64>, &[1.5], &[4]).is_err());
        assert!(quasinorm_sweep(shrinking_family_point::<f64>, &[], &[4]).is_err());
        assert!(log_log_slope(&table[..1], 0).is_err());
    }
}
