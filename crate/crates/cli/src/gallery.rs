//! Seeded case families written as operator documents plus a manifest.

use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use rand::Rng;
use specsym_core::constructions::{
    broken_case, default_s_grid, quasinorm_sweep, shrinking_family_point, shrinking_family_representation,
    symmetric_case,
};
use specsym_core::random::rng;

use crate::document::{Expected, OperatorDocument};
use crate::error::CliError;
use crate::format::{complex, num};

pub const MANIFEST: &str = "manifest.csv";
pub const DEFECT_TABLE: &str = "defect.csv";
pub const CASES_PER_FAMILY: usize = 10;
pub const BREAK_EPS: f64 = 0.05;
/// Sizes tabulated for the defect family.
pub const DEFECT_GRID: [usize; 4] = [4, 16, 64, 256];
/// Sizes whose operators are also written as check cases.
pub const DEFECT_CASES: [usize; 2] = [4, 16];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Selector {
    #[value(name = "kron-d2")]
    KronD2,
    #[value(name = "kron-d3")]
    KronD3,
    #[value(name = "kron-d4")]
    KronD4,
    #[value(name = "kron-d5")]
    KronD5,
    Broken,
    Defect,
    All,
}

impl Selector {
    fn families(self) -> Vec<Selector> {
        match self {
            Selector::All => vec![
                Selector::KronD2,
                Selector::KronD3,
                Selector::KronD4,
                Selector::KronD5,
                Selector::Broken,
                Selector::Defect,
            ],
            other => vec![other],
        }
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestRow {
    pub file: String,
    pub expected: Expected,
}

/// Independent per-case seed from the user seed, a family tag and the
/// case index.
fn case_seed(seed: u64, family: Selector, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (family.tag() << 40) ^ index as u64
}

struct Case {
    file: String,
    doc: OperatorDocument,
}

fn kron_cases(family: Selector, d: usize, seed: u64) -> Result<Vec<Case>, CliError> {
    (0..CASES_PER_FAMILY)
        .map(|i| {
            let s = case_seed(seed, family, i);
            let base = rng(s).random_range(2..=5usize);
            let t = symmetric_case::<f64>(base, d, s)?;
            let name = format!("kron-d{d}-{i:02}");
            let expected = Expected {
                d,
                k: 0,
                symmetric: true,
            };
            Ok(Case {
                file: format!("{name}.json"),
                doc: OperatorDocument::from_matrix(&t, Some(name), Some(expected)),
            })
        })
        .collect()
}

fn broken_cases(seed: u64) -> Result<Vec<Case>, CliError> {
    (0..CASES_PER_FAMILY)
        .map(|i| {
            let s = case_seed(seed, Selector::Broken, i);
            let d = 2 + i % 3;
            let base = rng(s).random_range(2..=4usize);
            let t = broken_case::<f64>(base, d, BREAK_EPS, s)?;
            let name = format!("broken-{i:02}");
            let expected = Expected {
                d,
                k: 0,
                symmetric: false,
            };
            Ok(Case {
                file: format!("{name}.json"),
                doc: OperatorDocument::from_matrix(&t, Some(name), Some(expected)),
            })
        })
        .collect()
}

fn defect_cases() -> Result<Vec<Case>, CliError> {
    DEFECT_CASES
        .iter()
        .map(|&n| {
            let u = shrinking_family_representation::<f64>(n, 2.0)?;
            let name = format!("defect-{n:03}");
            // trace one rules out every rotation symmetry
            let expected = Expected {
                d: 2,
                k: 0,
                symmetric: false,
            };
            Ok(Case {
                file: format!("{name}.json"),
                doc: OperatorDocument::from_representation(&u, Some(name), Some(expected)),
            })
        })
        .collect()
}

/// The defect family as CSV over [`DEFECT_GRID`].
pub fn defect_table() -> Result<String, CliError> {
    let s_grid = default_s_grid::<f64>();
    let table = quasinorm_sweep(shrinking_family_point::<f64>, &s_grid, &DEFECT_GRID)?;
    let mut out = String::from(
        "n,nuclear_trace_re,nuclear_trace_im,trace_square_re,trace_square_im,op_norm,spectral_radius,eigen_l1_mass",
    );
    for s in &s_grid {
        let _ = write!(out, ",quasinorm_s{}", num(*s));
    }
    out.push('\n');
    for p in &table {
        let _ = write!(
            out,
            "{},{},{},{},{},{}",
            p.n,
            complex(p.nuclear_trace),
            complex(p.trace_square),
            num(p.op_norm),
            num(p.spectral_radius),
            num(p.eigen_l1_mass)
        );
        for &(_, q) in &p.s_quasinorms {
            let _ = write!(out, ",{}", num(q));
        }
        out.push('\n');
    }
    Ok(out)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Writes the selected families into `out_dir` and returns the manifest
/// rows, which are also written to [`MANIFEST`].
pub fn write_gallery(selector: Selector, out_dir: &Path, seed: u64) -> Result<Vec<ManifestRow>, CliError> {
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut cases = Vec::new();
    for family in selector.families() {
        match family {
            Selector::KronD2 => cases.extend(kron_cases(family, 2, seed)?),
            Selector::KronD3 => cases.extend(kron_cases(family, 3, seed)?),
            Selector::KronD4 => cases.extend(kron_cases(family, 4, seed)?),
            Selector::KronD5 => cases.extend(kron_cases(family, 5, seed)?),
            Selector::Broken => cases.extend(broken_cases(seed)?),
            Selector::Defect => {
                write_file(&out_dir.join(DEFECT_TABLE), &defect_table()?)?;
                cases.extend(defect_cases()?);
            }
            Selector::All => unreachable!("expanded by families()"),
        }
    }
    let mut manifest = String::from("file,d,k,expected_symmetric\n");
    let mut rows = Vec::with_capacity(cases.len());
    for case in cases {
        write_file(&out_dir.join(&case.file), &case.doc.to_json())?;
        let expected = case.doc.expected().expect("gallery cases carry expectations");
        let _ = writeln!(
            manifest,
            "{},{},{},{}",
            case.file, expected.d, expected.k, expected.symmetric
        );
        rows.push(ManifestRow {
            file: case.file,
            expected,
        });
    }
    write_file(&out_dir.join(MANIFEST), &manifest)?;
    Ok(rows)
}

/// Reads a manifest written by [`write_gallery`].
pub fn read_manifest(path: &Path) -> Result<Vec<ManifestRow>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    if header != "file,d,k,expected_symmetric" {
        return Err(CliError::Usage(format!(
            "{}: unexpected manifest header {header:?}",
            path.display()
        )));
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let bad = || CliError::Usage(format!("{}: line {}: malformed row {line:?}", path.display(), i + 2));
            let fields: Vec<&str> = line.split(',').collect();
            let [file, d, k, symmetric] = fields[..] else {
                return Err(bad());
            };
            Ok(ManifestRow {
                file: file.to_string(),
                expected: Expected {
                    d: d.parse().map_err(|_| bad())?,
                    k: k.parse().map_err(|_| bad())?,
                    symmetric: symmetric.parse().map_err(|_| bad())?,
                },
            })
        })
        .collect()
}
