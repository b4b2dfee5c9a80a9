//! Spectral symmetry of finite-dimensional operators decided from trace
//! data, with eigensolver cross-checks.
//!
//! Everything is generic over the real type `T` ([`Real`]: `f32` or
//! `f64`) and runs on `Complex<T>`. The aliases at the crate root fix
//! `T = f64`.

pub mod constructions;
pub mod eigen;
pub mod error;
pub mod fredholm;
pub mod matrix;
pub mod norms;
pub mod nuclear;
pub mod random;
pub mod scalar;
pub mod spectrum;
pub mod symmetry;
pub mod tolerance;
pub mod traces;

pub use error::{Error, Result};
pub use fredholm::{
    d_even_check, det_coeffs_from_traces, det_eval_product, det_eval_series, det_zeros, inverse_zeros, DEvenCheck,
};
pub use matrix::Matrix;
pub use norms::{dual_exponent, lp_norm};
pub use nuclear::{NuclearRepresentation, RankOneTerm};
pub use scalar::{root_of_unity, Real};
pub use spectrum::{multiset_equal, spectrum_of, Matching, SpectrumMultiset};
pub use symmetry::{
    central_symmetry, equivalence_harness, threshold_collapse_check, trace_criterion, zd_symmetric_spectrum, Route,
    SymmetryError, SymmetryReport, Witness,
};
pub use tolerance::Tolerance;
pub use traces::{power_traces, TraceSequence};

pub type ComplexScalar = num_complex::Complex<f64>;
pub type DenseOperator = Matrix<f64>;
pub type Spectrum = SpectrumMultiset<f64>;
pub type Traces = TraceSequence<f64>;
pub type DetCoefficients = fredholm::DetCoefficients<f64>;
pub type Representation = NuclearRepresentation<f64>;
pub type Report = SymmetryReport<f64>;
pub type DefaultTolerance = Tolerance<f64>;
pub type DefectFamilyPoint = constructions::DefectFamilyPoint<f64>;
