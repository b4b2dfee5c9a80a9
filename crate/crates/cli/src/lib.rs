//! Command-line front end for `specsym-core`.
//!
//! Every command is a pure function of its input document and flags that
//! returns the text to print and the exit code, so the binary in
//! `main.rs` only parses arguments and writes the result.

pub mod document;
pub mod error;
pub mod format;
pub mod gallery;
pub mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use specsym_core::symmetry::{default_n_max, equivalence_routes, HarnessConfig};
use specsym_core::{
    det_coeffs_from_traces, det_zeros, inverse_zeros, power_traces, spectrum_of, DefaultTolerance, Tolerance,
};

use crate::document::{Operator, OperatorDocument};
use crate::error::{exit, CliError};
use crate::format::complex;
use crate::gallery::{read_manifest, write_gallery, Selector};
use crate::report::Status;

#[derive(Debug, Parser)]
#[command(name = "specsym", version)]
#[command(about = "Spectral symmetry from power traces, with eigensolver cross-checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TolArgs {
    /// Relative tolerance.
    #[arg(long = "rel-tol", default_value_t = 1e-8)]
    pub rel_tol: f64,
    /// Absolute floor.
    #[arg(long = "abs-tol", default_value_t = 1e-12)]
    pub abs_tol: f64,
}

impl TolArgs {
    pub fn tolerance(self) -> Result<DefaultTolerance, CliError> {
        Tolerance::new(self.rel_tol, self.abs_tol).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Coeffs,
    Zeros,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Power traces trace(T^n) as CSV `n,re,im`.
    Traces {
        input: PathBuf,
        /// Largest power; defaults to the dimension.
        #[arg(long = "n-max", value_parser = clap::value_parser!(u64).range(1..))]
        n_max: Option<u64>,
    },
    /// Eigenvalue multiset as CSV `re,im,multiplicity`.
    Spectrum {
        input: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Determinant coefficients or zeros.
    Det {
        input: PathBuf,
        /// Largest coefficient index; defaults to the dimension.
        #[arg(long = "n-max", value_parser = clap::value_parser!(u64).range(1..))]
        n_max: Option<u64>,
        #[arg(long, value_enum, default_value_t = Emit::Coeffs)]
        emit: Emit,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Symmetry report by the determinant, spectral and trace routes.
    ///
    /// Exit code 0: symmetric, 1: not symmetric, 2: usage or input error,
    /// 3: the routes disagree.
    Check {
        input: PathBuf,
        /// Symmetry order; defaults to the document's expected d.
        #[arg(long = "d", value_parser = clap::value_parser!(u64).range(2..))]
        d: Option<u64>,
        /// Trace threshold: only indices n > K·d are inspected.
        #[arg(long = "K")]
        k: Option<usize>,
        /// Trace window.
        #[arg(long = "n-max", value_parser = clap::value_parser!(u64).range(1..))]
        n_max: Option<u64>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Write a family of seeded cases and a manifest.
    Gallery {
        #[arg(value_enum)]
        selector: Selector,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run `check` on every manifest row and compare with the expectation.
    Verify {
        manifest: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
}

/// Text for standard output and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            code: exit::SYMMETRIC,
        }
    }
}

fn to_usize(n: u64) -> Result<usize, CliError> {
    usize::try_from(n).map_err(|_| CliError::Usage(format!("{n} is too large")))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Traces { input, n_max } => {
            let doc = OperatorDocument::load(input)?;
            cmd_traces(&doc, n_max.map(to_usize).transpose()?).map(Outcome::ok)
        }
        Command::Spectrum { input, tol } => {
            let doc = OperatorDocument::load(input)?;
            cmd_spectrum(&doc, tol.tolerance()?).map(Outcome::ok)
        }
        Command::Det {
            input,
            n_max,
            emit,
            tol,
        } => {
            let doc = OperatorDocument::load(input)?;
            cmd_det(&doc, n_max.map(to_usize).transpose()?, *emit, tol.tolerance()?).map(Outcome::ok)
        }
        Command::Check {
            input,
            d,
            k,
            n_max,
            tol,
        } => {
            let doc = OperatorDocument::load(input)?;
            let options = CheckOptions {
                d: d.map(to_usize).transpose()?,
                k: *k,
                n_max: n_max.map(to_usize).transpose()?,
                tol: tol.tolerance()?,
            };
            cmd_check(&doc, options)
        }
        Command::Gallery { selector, out, seed } => {
            let rows = write_gallery(*selector, out, *seed)?;
            Ok(Outcome::ok(format!(
                "{} cases written to {}\n",
                rows.len(),
                out.join(gallery::MANIFEST).display()
            )))
        }
        Command::Verify { manifest, tol } => cmd_verify(manifest, tol.tolerance()?),
    }
}

/// `n,re,im` rows of `trace(T^n)`; representations add a `nuclear` row.
pub fn cmd_traces(doc: &OperatorDocument, n_max: Option<usize>) -> Result<String, CliError> {
    let op = doc.operator()?;
    let t = op.matrix();
    let s = power_traces(&t, n_max.unwrap_or(t.dim()))?;
    let mut out = String::from("n,re,im\n");
    for (n, z) in s.iter() {
        let _ = writeln!(out, "{n},{}", complex(z));
    }
    if let Operator::Representation(u) = &op {
        let _ = writeln!(out, "nuclear,{}", complex(u.nuclear_trace()));
    }
    Ok(out)
}

/// `re,im,multiplicity` rows in canonical order.
pub fn cmd_spectrum(doc: &OperatorDocument, tol: DefaultTolerance) -> Result<String, CliError> {
    let spec = spectrum_of(&doc.operator()?.matrix(), tol)?;
    let mut out = String::from("re,im,multiplicity\n");
    for &(z, m) in spec.values() {
        let _ = writeln!(out, "{},{m}", complex(z));
    }
    Ok(out)
}

/// Coefficient rows `n,re,im` from `n = 0`, or zero rows
/// `kind,re,im,multiplicity` with kind `zero` then `inverse`.
pub fn cmd_det(
    doc: &OperatorDocument,
    n_max: Option<usize>,
    emit: Emit,
    tol: DefaultTolerance,
) -> Result<String, CliError> {
    let t = doc.operator()?.matrix();
    let coeffs = det_coeffs_from_traces(&power_traces(&t, n_max.unwrap_or(t.dim()))?);
    let mut out = String::new();
    match emit {
        Emit::Coeffs => {
            out.push_str("n,re,im\n");
            for (n, &a) in coeffs.alpha().iter().enumerate() {
                let _ = writeln!(out, "{n},{}", complex(a));
            }
        }
        Emit::Zeros => {
            out.push_str("kind,re,im,multiplicity\n");
            for &(z, m) in det_zeros(&coeffs, tol)?.values() {
                let _ = writeln!(out, "zero,{},{m}", complex(z));
            }
            for &(z, m) in inverse_zeros(&coeffs, tol)?.values() {
                let _ = writeln!(out, "inverse,{},{m}", complex(z));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Falls back to the document's expected `d`.
    pub d: Option<usize>,
    /// Falls back to the document's expected `K`, then 0.
    pub k: Option<usize>,
    pub n_max: Option<usize>,
    pub tol: DefaultTolerance,
}

pub fn cmd_check(doc: &OperatorDocument, options: CheckOptions) -> Result<Outcome, CliError> {
    let expected = doc.expected();
    let d = options
        .d
        .or(expected.map(|e| e.d))
        .ok_or_else(|| CliError::Usage("--d is required when the document has no expected d".into()))?;
    if d < 2 {
        return Err(CliError::Usage(format!("--d must be at least 2, got {d}")));
    }
    let k = options.k.or(expected.map(|e| e.k)).unwrap_or(0);
    let t = doc.operator()?.matrix();
    let n_max = options.n_max.unwrap_or_else(|| default_n_max(t.dim(), d, k));
    let config = HarnessConfig {
        n_max: Some(n_max),
        threshold_k: k,
        ..HarnessConfig::default()
    };
    let routes = equivalence_routes(&t, d, options.tol, config)?;
    Ok(Outcome {
        stdout: report::render(doc.name(), t.dim(), &routes),
        code: Status::of(&routes).exit_code(),
    })
}

/// One `check` per manifest row; exit 0 iff every verdict and exit code
/// matches the expectation.
pub fn cmd_verify(manifest: &Path, tol: DefaultTolerance) -> Result<Outcome, CliError> {
    let dir = manifest.parent().unwrap_or(Path::new("."));
    let mut out = String::from("file,d,k,expected_symmetric,exit_code,status,match\n");
    let mut all = true;
    for row in read_manifest(manifest)? {
        let doc = OperatorDocument::load(&dir.join(&row.file))?;
        let options = CheckOptions {
            d: Some(row.expected.d),
            k: Some(row.expected.k),
            n_max: None,
            tol,
        };
        let outcome = cmd_check(&doc, options)?;
        let want = if row.expected.symmetric {
            exit::SYMMETRIC
        } else {
            exit::ASYMMETRIC
        };
        let ok = outcome.code == want;
        all &= ok;
        let status = match outcome.code {
            exit::SYMMETRIC => Status::Symmetric,
            exit::ASYMMETRIC => Status::Asymmetric,
            _ => Status::Disagreement,
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.file,
            row.expected.d,
            row.expected.k,
            row.expected.symmetric,
            outcome.code,
            status.name(),
            ok
        );
    }
    Ok(Outcome {
        stdout: out,
        code: if all { exit::SYMMETRIC } else { exit::ASYMMETRIC },
    })
}
