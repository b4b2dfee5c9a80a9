use num_complex::Complex;
use specsym_core::constructions::{broken_case, from_spectrum, symmetric_case};
use specsym_core::random::ginibre_matrix;
use specsym_core::{
    central_symmetry, det_coeffs_from_traces, det_eval_series, equivalence_harness, inverse_zeros, multiset_equal,
    power_traces, spectrum_of, zd_symmetric_spectrum, Matrix, NuclearRepresentation, RankOneTerm, SpectrumMultiset,
    Tolerance,
};

#[test]
fn single_precision_pipeline() {
    let tol = Tolerance::<f32>::new(1e-3, 1e-5).unwrap();
    let t = symmetric_case::<f32>(2, 2, 4).unwrap();
    let r = equivalence_harness(&t, 2, tol).unwrap();
    assert_eq!(r.verdicts(), (true, true, true));
    let b = broken_case::<f32>(2, 2, 0.05, 4).unwrap();
    assert_eq!(
        equivalence_harness(&b, 2, tol).unwrap().verdicts(),
        (false, false, false)
    );
}

#[test]
fn determinant_vanishes_at_reciprocal_eigenvalues() {
    let tol = Tolerance::default();
    let t = ginibre_matrix::<f64>(6, 21);
    let c = det_coeffs_from_traces(&power_traces(&t, 6).unwrap());
    let spec = spectrum_of(&t, tol).unwrap();
    for &(lambda, _) in spec.values() {
        let v = det_eval_series(&c, Complex::new(1.0, 0.0) / lambda);
        assert!(v.norm() < 1e-9, "{lambda} gives {v}");
    }
    let inv = inverse_zeros(&c, tol).unwrap();
    assert!(multiset_equal(&inv, &spec, tol).equal);
}

#[test]
fn prescribed_spectrum_round_trips() {
    let tol = Tolerance::default();
    let w = Complex::new(0.0, 1.0);
    let pairs = [
        (Complex::new(1.0, 0.0), 2),
        (w, 2),
        (-Complex::new(1.0, 0.0), 2),
        (-w, 2),
    ];
    let spec = SpectrumMultiset::from_weighted(&pairs, tol).unwrap();
    let t = from_spectrum(&spec).unwrap();
    assert!(
        zd_symmetric_spectrum(&spectrum_of(&t, tol).unwrap(), 4, tol)
            .unwrap()
            .verdict
    );
    assert!(central_symmetry(&t, tol).unwrap().verdict());
}

#[test]
fn representation_traces_match_induced_operator() {
    let c = |re: f64| Complex::new(re, 0.0);
    let terms = vec![
        RankOneTerm::new(c(0.5), vec![c(1.0), c(1.0)], vec![c(1.0), c(0.0)]),
        RankOneTerm::new(c(-0.25), vec![c(0.0), c(2.0)], vec![c(1.0), c(-1.0)]),
    ];
    let u = NuclearRepresentation::new(2.0, 2, terms).unwrap();
    let m = u.induced_operator();
    let s = power_traces(&m, 1).unwrap();
    assert!((s.get(1).unwrap() - u.nuclear_trace()).norm() < 1e-15);
    let want = Matrix::diagonal(&[c(0.5), c(0.5)]).unwrap();
    assert!(m.add(&want.scale(c(-1.0)).unwrap()).unwrap().max_abs_entry() < 1e-15);
}
