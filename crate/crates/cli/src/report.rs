//! The `check` report: TOML with a fixed field order.

use std::fmt::Write;

use specsym_core::symmetry::EquivalenceReport;
use specsym_core::{SymmetryReport, Witness};

use crate::error::exit;
use crate::format::num;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Symmetric,
    Asymmetric,
    Disagreement,
}

impl Status {
    pub fn of(routes: &EquivalenceReport<f64>) -> Self {
        match routes.verdicts() {
            (true, true, true) => Status::Symmetric,
            (false, false, false) => Status::Asymmetric,
            _ => Status::Disagreement,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Symmetric => "symmetric",
            Status::Asymmetric => "asymmetric",
            Status::Disagreement => "disagreement",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Symmetric => exit::SYMMETRIC,
            Status::Asymmetric => exit::ASYMMETRIC,
            Status::Disagreement => exit::DISAGREEMENT,
        }
    }
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn section(out: &mut String, title: &str, r: &SymmetryReport<f64>) {
    let _ = writeln!(out, "\n[{title}]");
    let _ = writeln!(out, "verdict = {}", r.verdict);
    let _ = writeln!(out, "threshold_k = {}", r.threshold_k);
    if let Some(n) = r.n_max {
        let _ = writeln!(out, "n_max = {n}");
    }
    let _ = writeln!(out, "threshold = {}", num(r.threshold));
    if let Some(a) = r.annotation {
        let _ = writeln!(out, "annotation = {}", quoted(a));
    }
    let (kind, index, value) = match r.witness {
        None => return,
        Some(Witness::Eigenvalue(z)) => ("eigenvalue", None, z),
        Some(Witness::TraceIndex { n, value }) => ("trace", Some(n), value),
        Some(Witness::CoefficientIndex { n, value }) => ("coefficient", Some(n), value),
    };
    let _ = writeln!(out, "witness_kind = {}", quoted(kind));
    if let Some(n) = index {
        let _ = writeln!(out, "witness_index = {n}");
    }
    let _ = writeln!(out, "witness_re = {}", num(value.re));
    let _ = writeln!(out, "witness_im = {}", num(value.im));
}

/// Renders the three route reports. The top-level verdict is the
/// spectral one.
pub fn render(name: Option<&str>, dim: usize, routes: &EquivalenceReport<f64>) -> String {
    let mut out = String::new();
    if let Some(name) = name {
        let _ = writeln!(out, "name = {}", quoted(name));
    }
    let tol = routes.spectral.tolerance;
    let _ = writeln!(out, "dim = {dim}");
    let _ = writeln!(out, "d = {}", routes.spectral.d);
    let _ = writeln!(out, "k = {}", routes.trace.threshold_k);
    let _ = writeln!(out, "n_max = {}", routes.trace.n_max.unwrap_or(0));
    let _ = writeln!(out, "rel_tol = {}", num(tol.rel()));
    let _ = writeln!(out, "abs_tol = {}", num(tol.abs()));
    let _ = writeln!(out, "verdict = {}", routes.verdict());
    let _ = writeln!(out, "status = {}", quoted(Status::of(routes).name()));
    section(&mut out, "determinant", &routes.determinant);
    section(&mut out, "spectral", &routes.spectral);
    section(&mut out, "trace", &routes.trace);
    out
}
