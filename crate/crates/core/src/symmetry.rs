//! ℤ_d-symmetry verdicts.
//!
//! Three routes decide whether the nonzero spectrum is invariant under
//! multiplication by `e^{2πi/d}`: the eigenvalue multiset itself, vanishing
//! of the power traces `s_n` with `d ∤ n`, and vanishing of the determinant
//! coefficients `α_n` with `d ∤ n`. In finite dimension all three are
//! equivalent, so disagreement means numerical breakdown and is reported
//! as an error rather than reconciled. The spectral route is the reference.
//!
//! Zero eigenvalues are exempt: only the nonzero part of the multiset has
//! to be invariant.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fredholm::{d_even_check, det_coeffs_from_traces};
use crate::matrix::Matrix;
use crate::scalar::{root_of_unity, Real};
use crate::spectrum::{match_units, spectrum_of, SpectrumMultiset};
use crate::tolerance::Tolerance;
use crate::traces::{power_traces, TraceSequence};

/// Largest dimension the equivalence harness accepts by default.
pub const DEFAULT_DIM_CAP: usize = 64;
/// Upper bound on the default trace window.
pub const DEFAULT_N_MAX_CAP: usize = 512;

pub const ALL_ZERO_ANNOTATION: &str = "all-zero spectrum at tolerance";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Spectral,
    TraceCriterion,
    Determinant,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Spectral => "spectral",
            Route::TraceCriterion => "trace",
            Route::Determinant => "determinant",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Witness<T> {
    /// Eigenvalue whose rotation by `e^{2πi/d}` has no partner.
    Eigenvalue(Complex<T>),
    /// First `s_n` with `d ∤ n` above threshold.
    TraceIndex { n: usize, value: Complex<T> },
    /// First `α_n` with `d ∤ n` above threshold.
    CoefficientIndex { n: usize, value: Complex<T> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport<T> {
    pub d: usize,
    pub verdict: bool,
    pub route: Route,
    pub threshold_k: usize,
    pub witness: Option<Witness<T>>,
    pub tolerance: Tolerance<T>,
    /// Effective threshold the route compared against.
    pub threshold: T,
    /// Last trace index inspected, for routes that use traces.
    pub n_max: Option<usize>,
    pub annotation: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymmetryError<T: Real> {
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error(
        "{} and {} routes disagree (d = {}): {} says {}, {} says {}",
        .0.route, .1.route, .0.d, .0.route, .0.verdict, .1.route, .1.verdict
    )]
    Disagreement(Box<SymmetryReport<T>>, Box<SymmetryReport<T>>),
}

fn check_order(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidOrder(d))
    } else {
        Ok(())
    }
}

/// Whether the nonzero part of `spec` is invariant under rotation by
/// `e^{2πi/d}`; invariance under the generator gives the whole group.
///
/// The witness is the first eigenvalue, in canonical order, whose rotated
/// copy is left unmatched.
pub fn zd_symmetric_spectrum<T: Real>(
    spec: &SpectrumMultiset<T>,
    d: usize,
    tol: Tolerance<T>,
) -> Result<SymmetryReport<T>> {
    check_order(d)?;
    let threshold = tol.threshold(spec.scale());
    let units = spec.nonzero_part(tol).expanded();
    let omega = root_of_unity::<T>(1, d);
    let rotated: Vec<_> = units.iter().map(|&z| z * omega).collect();
    let assignment = match_units(&rotated, &units, threshold);
    let witness = assignment
        .iter()
        .position(Option::is_none)
        .map(|i| Witness::Eigenvalue(units[i]));
    Ok(SymmetryReport {
        d,
        verdict: witness.is_none(),
        route: Route::Spectral,
        threshold_k: 0,
        witness,
        tolerance: tol,
        threshold,
        n_max: None,
        annotation: None,
    })
}

/// Whether `s_n ≈ 0` for every `K·d < n ≤ N_max` with `d ∤ n`.
///
/// The threshold is scaled by the largest `|s_n|` in the window,
/// multiples of `d` included. A window entirely below the absolute floor
/// passes with [`ALL_ZERO_ANNOTATION`].
pub fn trace_criterion<T: Real>(
    s: &TraceSequence<T>,
    d: usize,
    k: usize,
    tol: Tolerance<T>,
) -> Result<SymmetryReport<T>> {
    check_order(d)?;
    let required = (k + 1) * d;
    let n_max = s.n_max();
    if n_max < required {
        return Err(Error::WindowTooShort { n_max, required });
    }
    let window = || s.iter().filter(|&(n, _)| n > k * d);
    let scale = window().map(|(_, z)| z.norm()).fold(T::zero(), T::max);
    let threshold = tol.threshold(scale);
    let mut report = SymmetryReport {
        d,
        verdict: true,
        route: Route::TraceCriterion,
        threshold_k: k,
        witness: None,
        tolerance: tol,
        threshold,
        n_max: Some(n_max),
        annotation: None,
    };
    if scale <= tol.abs() {
        report.annotation = Some(ALL_ZERO_ANNOTATION);
        return Ok(report);
    }
    report.witness = window()
        .find(|&(n, z)| n % d != 0 && z.norm() > threshold)
        .map(|(n, value)| Witness::TraceIndex { n, value });
    report.verdict = report.witness.is_none();
    Ok(report)
}

/// Trace window used when none is given: `min(3·dim·d, 512)`, raised to
/// `K·d + dim·d` when a threshold `K > 0` needs the room.
pub fn default_n_max(dim: usize, d: usize, k: usize) -> usize {
    let base = (3 * dim * d).min(DEFAULT_N_MAX_CAP);
    if k == 0 {
        base
    } else {
        base.max(k * d + dim * d)
    }
}

fn determinant_report<T: Real>(
    s: &TraceSequence<T>,
    dim: usize,
    d: usize,
    tol: Tolerance<T>,
) -> Result<SymmetryReport<T>> {
    // beyond dim the coefficients are pure rounding noise
    let head = TraceSequence::new(s.values()[..dim.min(s.n_max())].to_vec(), s.source_dim())?;
    let coeffs = det_coeffs_from_traces(&head);
    let check = d_even_check(&coeffs, d, tol)?;
    Ok(SymmetryReport {
        d,
        verdict: check.verdict,
        route: Route::Determinant,
        threshold_k: 0,
        witness: check
            .first_violation
            .map(|(n, value)| Witness::CoefficientIndex { n, value }),
        tolerance: tol,
        threshold: check.threshold,
        n_max: Some(head.n_max()),
        annotation: None,
    })
}

fn agree<T: Real>(
    reference: &SymmetryReport<T>,
    other: &SymmetryReport<T>,
) -> std::result::Result<(), SymmetryError<T>> {
    if reference.verdict == other.verdict {
        Ok(())
    } else {
        Err(SymmetryError::Disagreement(
            Box::new(reference.clone()),
            Box::new(other.clone()),
        ))
    }
}

/// Spectral and trace verdicts for `d = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralSymmetry<T> {
    pub spectral: SymmetryReport<T>,
    pub trace: SymmetryReport<T>,
}

impl<T: Real> CentralSymmetry<T> {
    pub fn verdict(&self) -> bool {
        self.spectral.verdict
    }
}

/// Central symmetry by both the spectral and the trace route (`K = 0`,
/// default window). Disagreement is an error carrying both reports.
pub fn central_symmetry<T: Real>(
    t: &Matrix<T>,
    tol: Tolerance<T>,
) -> std::result::Result<CentralSymmetry<T>, SymmetryError<T>> {
    let spec = spectrum_of(t, tol)?;
    let spectral = zd_symmetric_spectrum(&spec, 2, tol)?;
    let s = power_traces(t, default_n_max(t.dim(), 2, 0))?;
    let trace = trace_criterion(&s, 2, 0, tol)?;
    agree(&spectral, &trace)?;
    Ok(CentralSymmetry { spectral, trace })
}

/// Determinant, spectral and trace verdicts for one `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport<T> {
    pub determinant: SymmetryReport<T>,
    pub spectral: SymmetryReport<T>,
    pub trace: SymmetryReport<T>,
}

impl<T: Real> EquivalenceReport<T> {
    pub fn verdict(&self) -> bool {
        self.spectral.verdict
    }

    pub fn verdicts(&self) -> (bool, bool, bool) {
        (self.determinant.verdict, self.spectral.verdict, self.trace.verdict)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    pub dim_cap: usize,
    /// Trace window; `None` uses [`default_n_max`].
    pub n_max: Option<usize>,
    /// Threshold `K` of the trace route.
    pub threshold_k: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            dim_cap: DEFAULT_DIM_CAP,
            n_max: None,
            threshold_k: 0,
        }
    }
}

/// All three routes with the default configuration.
pub fn equivalence_harness<T: Real>(
    t: &Matrix<T>,
    d: usize,
    tol: Tolerance<T>,
) -> std::result::Result<EquivalenceReport<T>, SymmetryError<T>> {
    equivalence_harness_with(t, d, tol, HarnessConfig::default())
}

/// All three routes; any pairwise disagreement is an error naming the
/// spectral report first.
pub fn equivalence_harness_with<T: Real>(
    t: &Matrix<T>,
    d: usize,
    tol: Tolerance<T>,
    config: HarnessConfig,
) -> std::result::Result<EquivalenceReport<T>, SymmetryError<T>> {
    let report = equivalence_routes(t, d, tol, config)?;
    agree(&report.spectral, &report.determinant)?;
    agree(&report.spectral, &report.trace)?;
    Ok(report)
}

/// The three route reports without the agreement check.
pub fn equivalence_routes<T: Real>(
    t: &Matrix<T>,
    d: usize,
    tol: Tolerance<T>,
    config: HarnessConfig,
) -> Result<EquivalenceReport<T>> {
    check_order(d)?;
    let dim = t.dim();
    if dim > config.dim_cap {
        return Err(Error::DimensionCap {
            dim,
            cap: config.dim_cap,
        });
    }
    let k = config.threshold_k;
    let n_max = config.n_max.unwrap_or_else(|| default_n_max(dim, d, k));
    let s = power_traces(t, n_max.max(dim))?;
    let window = TraceSequence::new(s.values()[..n_max].to_vec(), dim)?;
    let spec = spectrum_of(t, tol)?;
    Ok(EquivalenceReport {
        determinant: determinant_report(&s, dim, d, tol)?,
        spectral: zd_symmetric_spectrum(&spec, d, tol)?,
        trace: trace_criterion(&window, d, k, tol)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollapseCheck<T> {
    /// The implication "passes at K ⇒ passes at 0" held.
    pub holds: bool,
    /// The criterion already failed at K, so the implication is empty.
    pub vacuous: bool,
    pub at_k: SymmetryReport<T>,
    pub at_zero: SymmetryReport<T>,
}

/// Checks that passing the trace criterion above `K·d` (with a window of
/// at least `K·d + dim·d`) forces it to pass from `n = 1`.
pub fn threshold_collapse_check<T: Real>(
    t: &Matrix<T>,
    d: usize,
    k: usize,
    tol: Tolerance<T>,
) -> Result<CollapseCheck<T>> {
    check_order(d)?;
    if k == 0 {
        return Err(Error::InvalidParameter("threshold K must be at least 1".into()));
    }
    if t.dim() > DEFAULT_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: t.dim(),
            cap: DEFAULT_DIM_CAP,
        });
    }
    let s = power_traces(t, default_n_max(t.dim(), d, k))?;
    let at_k = trace_criterion(&s, d, k, tol)?;
    let at_zero = trace_criterion(&s, d, 0, tol)?;
    Ok(CollapseCheck {
        holds: !at_k.verdict || at_zero.verdict,
        vacuous: !at_k.verdict,
        at_k,
        at_zero,
    })
}

/// Whether the witnesses of a failed spectral report and a failed trace
/// report describe the same spectrum: the spectral witness is an
/// eigenvalue of `spec`, and the offending trace is reproduced by the
/// eigenvalue power sum `Σ m λ^n` within `tol` at the window's scale.
pub fn witnesses_consistent<T: Real>(
    spectral: &SymmetryReport<T>,
    trace: &SymmetryReport<T>,
    spec: &SpectrumMultiset<T>,
    tol: Tolerance<T>,
) -> bool {
    let (Some(Witness::Eigenvalue(lambda)), Some(Witness::TraceIndex { n, value })) = (spectral.witness, trace.witness)
    else {
        return false;
    };
    if spectral.verdict || trace.verdict || spec.multiplicity_of(lambda, tol) == 0 {
        return false;
    }
    let Ok(n) = u32::try_from(n) else {
        return false;
    };
    let predicted = spec.power_sum(n);
    let scale = (trace.threshold / tol.rel()).max(value.norm());
    (predicted - value).norm() <= tol.threshold(scale) && predicted.norm() > trace.threshold
}
