//! Operator documents: the JSON input format.
//!
//! ```json
//! {"kind": "matrix", "dim": 2, "re": [[1, 0], [0, -1]], "im": [[0, 0], [0, 0]]}
//! {"kind": "representation", "ambient_p": "inf", "dim": 2,
//!  "terms": [{"mu": {"re": 1, "im": 0},
//!             "functional": {"re": [1, 0], "im": [0, 0]},
//!             "vector": {"re": [1, 0], "im": [0, 0]}}]}
//! ```
//!
//! Both kinds accept an optional `name` and an optional
//! `expected = {d, k, symmetric}` block used by gallery manifests.
//! Numbers are written in shortest round-trip form, so reading a written
//! document reproduces every entry bit for bit.

use std::fmt;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use specsym_core::{DenseOperator, Matrix, NuclearRepresentation, RankOneTerm, Representation};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorDocument {
    Matrix {
        name: Option<String>,
        dim: usize,
        re: Vec<Vec<f64>>,
        im: Vec<Vec<f64>>,
        expected: Option<Expected>,
    },
    Representation {
        name: Option<String>,
        ambient_p: Exponent,
        dim: usize,
        terms: Vec<TermDocument>,
        expected: Option<Expected>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Matrix,
    Representation,
}

/// Flat wire form. Kept flat rather than as a tagged enum so that error
/// paths and positions survive deserialization.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient_p: Option<Exponent>,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    re: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<TermDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expected: Option<Expected>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub d: usize,
    #[serde(default)]
    pub k: usize,
    pub symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarDocument {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorDocument {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDocument {
    pub mu: ScalarDocument,
    pub functional: VectorDocument,
    pub vector: VectorDocument,
}

/// Ambient exponent `p`: a number `>= 1` or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(pub f64);

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(p) => Ok(Exponent(p)),
            Raw::Text(t) if t == "inf" => Ok(Exponent(f64::INFINITY)),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "ambient_p must be a number or \"inf\", got {t:?}"
            ))),
        }
    }
}

/// A parsed and validated document.
#[derive(Debug, Clone, PartialEq)]
pub enum Operator {
    Matrix(DenseOperator),
    Representation(Representation),
}

impl Operator {
    /// The matrix the analyses run on.
    pub fn matrix(&self) -> DenseOperator {
        match self {
            Operator::Matrix(m) => m.clone(),
            Operator::Representation(u) => u.induced_operator(),
        }
    }
}

/// Where a document failed: a JSON path and, for syntax and type errors,
/// a line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {} column {}: ", self.line, self.column)?;
        }
        if !self.path.is_empty() && self.path != "." {
            write!(f, "field `{}`: ", self.path)?;
        }
        f.write_str(&self.message)
    }
}

impl OperatorDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            ParseError {
                path,
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })?;
        let doc = Self::from_raw(raw)?;
        doc.validate()?;
        Ok(doc)
    }

    fn from_raw(raw: RawDocument) -> Result<Self, ParseError> {
        let missing = |field: &str| ParseError {
            path: field.into(),
            line: 0,
            column: 0,
            message: format!("missing field `{field}`"),
        };
        let unexpected = |field: &str| ParseError {
            path: field.into(),
            line: 0,
            column: 0,
            message: format!("field `{field}` does not belong to kind {:?}", raw.kind),
        };
        match raw.kind {
            Kind::Matrix => {
                if raw.ambient_p.is_some() {
                    return Err(unexpected("ambient_p"));
                }
                if raw.terms.is_some() {
                    return Err(unexpected("terms"));
                }
                Ok(OperatorDocument::Matrix {
                    re: raw.re.ok_or_else(|| missing("re"))?,
                    im: raw.im.ok_or_else(|| missing("im"))?,
                    name: raw.name,
                    dim: raw.dim,
                    expected: raw.expected,
                })
            }
            Kind::Representation => {
                if raw.re.is_some() {
                    return Err(unexpected("re"));
                }
                if raw.im.is_some() {
                    return Err(unexpected("im"));
                }
                Ok(OperatorDocument::Representation {
                    ambient_p: raw.ambient_p.ok_or_else(|| missing("ambient_p"))?,
                    terms: raw.terms.ok_or_else(|| missing("terms"))?,
                    name: raw.name,
                    dim: raw.dim,
                    expected: raw.expected,
                })
            }
        }
    }

    fn to_raw(&self) -> RawDocument {
        match self.clone() {
            OperatorDocument::Matrix {
                name,
                dim,
                re,
                im,
                expected,
            } => RawDocument {
                kind: Kind::Matrix,
                name,
                ambient_p: None,
                dim,
                re: Some(re),
                im: Some(im),
                terms: None,
                expected,
            },
            OperatorDocument::Representation {
                name,
                ambient_p,
                dim,
                terms,
                expected,
            } => RawDocument {
                kind: Kind::Representation,
                name,
                ambient_p: Some(ambient_p),
                dim,
                re: None,
                im: None,
                terms: Some(terms),
                expected,
            },
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| CliError::Parse {
            file: path.display().to_string(),
            error: e,
        })
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_raw()).expect("documents serialize");
        text.push('\n');
        text
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            OperatorDocument::Matrix { name, .. } | OperatorDocument::Representation { name, .. } => name.as_deref(),
        }
    }

    pub fn expected(&self) -> Option<Expected> {
        match self {
            OperatorDocument::Matrix { expected, .. } | OperatorDocument::Representation { expected, .. } => *expected,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            OperatorDocument::Matrix { dim, .. } | OperatorDocument::Representation { dim, .. } => *dim,
        }
    }

    pub fn from_matrix(m: &DenseOperator, name: Option<String>, expected: Option<Expected>) -> Self {
        let rows = |f: fn(&Complex<f64>) -> f64| m.rows().map(|r| r.iter().map(f).collect()).collect();
        OperatorDocument::Matrix {
            name,
            dim: m.dim(),
            re: rows(|z| z.re),
            im: rows(|z| z.im),
            expected,
        }
    }

    pub fn from_representation(u: &Representation, name: Option<String>, expected: Option<Expected>) -> Self {
        let vector = |v: &[Complex<f64>]| VectorDocument {
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        };
        OperatorDocument::Representation {
            name,
            ambient_p: Exponent(u.ambient_p()),
            dim: u.dim(),
            terms: u
                .terms()
                .iter()
                .map(|t| TermDocument {
                    mu: ScalarDocument {
                        re: t.mu.re,
                        im: t.mu.im,
                    },
                    functional: vector(&t.functional),
                    vector: vector(&t.vector),
                })
                .collect(),
            expected,
        }
    }

    /// Shape checks that the type system cannot express.
    fn validate(&self) -> Result<(), ParseError> {
        let fail = |path: String, message: String| ParseError {
            path,
            line: 0,
            column: 0,
            message,
        };
        let dim = self.dim();
        if dim == 0 {
            return Err(fail("dim".into(), "dim must be at least 1".into()));
        }
        if let Some(e) = self.expected() {
            if e.d < 2 {
                return Err(fail("expected.d".into(), format!("d must be at least 2, got {}", e.d)));
            }
        }
        let check_len = |path: String, len: usize| {
            if len == dim {
                Ok(())
            } else {
                Err(fail(path, format!("expected length {dim}, found {len}")))
            }
        };
        match self {
            OperatorDocument::Matrix { re, im, .. } => {
                for (label, rows) in [("re", re), ("im", im)] {
                    check_len(label.into(), rows.len())?;
                    for (i, row) in rows.iter().enumerate() {
                        check_len(format!("{label}[{i}]"), row.len())?;
                    }
                }
            }
            OperatorDocument::Representation { ambient_p, terms, .. } => {
                if ambient_p.0.is_nan() || ambient_p.0 < 1.0 {
                    return Err(fail(
                        "ambient_p".into(),
                        format!("p must be >= 1 or \"inf\", got {}", ambient_p.0),
                    ));
                }
                for (k, t) in terms.iter().enumerate() {
                    for (label, v) in [("functional", &t.functional), ("vector", &t.vector)] {
                        check_len(format!("terms[{k}].{label}.re"), v.re.len())?;
                        check_len(format!("terms[{k}].{label}.im"), v.im.len())?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Converts into library types.
    pub fn operator(&self) -> Result<Operator, CliError> {
        match self {
            OperatorDocument::Matrix { dim, re, im, .. } => {
                let data = re
                    .iter()
                    .flatten()
                    .zip(im.iter().flatten())
                    .map(|(&a, &b)| Complex::new(a, b))
                    .collect();
                Ok(Operator::Matrix(Matrix::new(*dim, data)?))
            }
            OperatorDocument::Representation {
                ambient_p, dim, terms, ..
            } => {
                let vector = |v: &VectorDocument| -> Vec<Complex<f64>> {
                    v.re.iter().zip(&v.im).map(|(&a, &b)| Complex::new(a, b)).collect()
                };
                let terms = terms
                    .iter()
                    .map(|t| RankOneTerm::new(Complex::new(t.mu.re, t.mu.im), vector(&t.functional), vector(&t.vector)))
                    .collect();
                Ok(Operator::Representation(NuclearRepresentation::new(
                    ambient_p.0,
                    *dim,
                    terms,
                )?))
            }
        }
    }
}
