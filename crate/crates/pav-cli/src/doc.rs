//! JSON document types and their conversions to and from the core types.
//! Integers travel as decimal strings so entries of any size survive;
//! complex numbers are [re, im] pairs of doubles.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use pav_core::exact::IntMatrix;
use pav_core::morphisms::{CheckReport, ColumnConstraint, MorphismDelta, MorphismType};
use pav_core::siegel::{CMat, SiegelPoint};
use pav_core::symplectic::PolarizationType;

pub type MatrixDoc = Vec<Vec<String>>;
pub type ComplexMatrixDoc = Vec<Vec<[f64; 2]>>;

/// Structural (shape- or digit-level) problems: exit code 2 territory.
#[derive(Debug)]
pub struct Malformed(pub String);

impl std::fmt::Display for Malformed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "malformed input: {}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Isogeny,
    Embedding,
    Morphism,
}

/// The interchange document for type data. Chain counts per kind:
/// isogeny (D, E), embedding (D, D', E), morphism (D, D', E, H, H', K).
/// Matrix counts depend on the operation; Siegel points and column
/// constraints ride along optionally.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct TypeDocument {
    pub kind: Kind,
    pub polarizations: Vec<Vec<String>>,
    pub matrices: Vec<MatrixDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub siegel_points: Option<Vec<ComplexMatrixDoc>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub column_constraints: Option<Vec<ColumnConstraintDoc>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ColumnConstraintDoc {
    pub column: usize,
    pub values: Vec<String>,
}

/// Bare-matrix operations (snf, hnf, kernel, elliptic-canonical,
/// hecke-factor) read this shape.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub matrix: MatrixDoc,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<String>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SiegelDocument {
    pub siegel_point: ComplexMatrixDoc,
}

pub fn parse_bigint(s: &str) -> Result<BigInt, Malformed> {
    BigInt::from_str(s).map_err(|_| Malformed(format!("not a decimal integer: {s:?}")))
}

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<IntMatrix, Malformed> {
    let rows = doc.len();
    let cols = doc.first().map(|r| r.len()).unwrap_or(0);
    let mut entries = Vec::with_capacity(rows * cols);
    for row in doc {
        if row.len() != cols {
            return Err(Malformed("ragged matrix rows".into()));
        }
        for v in row {
            entries.push(parse_bigint(v)?);
        }
    }
    Ok(IntMatrix::new(rows, cols, entries))
}

pub fn matrix_to_doc(m: &IntMatrix) -> MatrixDoc {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

/// Chain digits must parse (structural); chain conditions are semantic and
/// surface as a core error.
pub fn chain_from_doc(doc: &[String]) -> Result<Result<PolarizationType, pav_core::Error>, Malformed> {
    let mut divisors = Vec::with_capacity(doc.len());
    for v in doc {
        divisors.push(parse_bigint(v)?);
    }
    Ok(PolarizationType::new(divisors))
}

pub fn chain_to_doc(t: &PolarizationType) -> Vec<String> {
    t.divisors().iter().map(|d| d.to_string()).collect()
}

pub fn siegel_from_doc(doc: &ComplexMatrixDoc) -> Result<SiegelPoint, Malformed> {
    let n = doc.len();
    for row in doc {
        if row.len() != n {
            return Err(Malformed("Siegel point matrix must be square".into()));
        }
    }
    let m = CMat::from_fn(n, n, |i, j| Complex64::new(doc[i][j][0], doc[i][j][1]));
    SiegelPoint::new(m).map_err(|e| Malformed(e.to_string()))
}

pub fn siegel_to_doc(z: &SiegelPoint) -> ComplexMatrixDoc {
    let n = z.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = z.matrix().get(i, j);
                    [v.re, v.im]
                })
                .collect()
        })
        .collect()
}

pub fn constraints_from_doc(
    docs: &[ColumnConstraintDoc],
) -> Result<Vec<ColumnConstraint>, Malformed> {
    docs.iter()
        .map(|c| {
            let values = c
                .values
                .iter()
                .map(|v| parse_bigint(v))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ColumnConstraint { column: c.column, values })
        })
        .collect()
}

pub fn morphism_to_doc(t: &MorphismType) -> TypeDocument {
    let delta = t.delta();
    TypeDocument {
        kind: Kind::Morphism,
        polarizations: delta.types().iter().map(|p| chain_to_doc(p)).collect(),
        matrices: vec![
            matrix_to_doc(t.embedding_source()),
            matrix_to_doc(t.embedding_target()),
            matrix_to_doc(t.isogeny()),
        ],
        siegel_points: None,
        column_constraints: None,
    }
}

/// Builds a morphism type from a document's six chains and three matrices.
pub fn morphism_from_parts(
    chains: &[PolarizationType],
    matrices: &[IntMatrix],
) -> Result<MorphismType, pav_core::Error> {
    let delta = MorphismDelta {
        source_sub: chains[0].clone(),
        source_complement: chains[1].clone(),
        source_ambient: chains[2].clone(),
        target_sub: chains[3].clone(),
        target_complement: chains[4].clone(),
        target_ambient: chains[5].clone(),
    };
    MorphismType::new(delta, matrices[0].clone(), matrices[1].clone(), matrices[2].clone())
}

/// The serialized form of a checker verdict.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ReportDoc {
    pub valid: bool,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kernel: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target_kernel: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub induced_matrix: Option<MatrixDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub det_sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_pbar: Option<MatrixDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_r: Option<MatrixDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

pub fn report_to_doc(r: &CheckReport) -> ReportDoc {
    ReportDoc {
        valid: r.valid,
        failures: r.failure_names().iter().map(|s| s.to_string()).collect(),
        kernel: r
            .kernel
            .as_ref()
            .map(|g| g.invariant_factors().iter().map(|f| f.to_string()).collect()),
        target_kernel: r
            .target_kernel
            .as_ref()
            .map(|g| g.invariant_factors().iter().map(|f| f.to_string()).collect()),
        induced_matrix: r.induced_matrix.as_ref().map(matrix_to_doc),
        det_sign: r.det_sign,
        witness_pbar: r.factor_witness.as_ref().map(|w| matrix_to_doc(&w.pbar)),
        witness_r: r.factor_witness.as_ref().map(|w| matrix_to_doc(&w.r)),
        error: None,
    }
}

/// Report body for semantic failures (exit code 1): names type_mismatch for
/// dimension bookkeeping problems and carries the message.
pub fn error_report(err: &pav_core::Error) -> ReportDoc {
    use pav_core::Error::*;
    let failures = match err {
        SizeMismatch(_) | DimensionClash(_) | LengthMismatch(_, _) | InvalidChain(_)
        | NonSquare { .. } | NotTwoByTwo => {
            vec!["type_mismatch".to_string()]
        }
        _ => Vec::new(),
    };
    ReportDoc {
        valid: false,
        failures,
        kernel: None,
        target_kernel: None,
        induced_matrix: None,
        det_sign: None,
        witness_pbar: None,
        witness_r: None,
        error: Some(err.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_roundtrip_with_huge_entries() {
        let huge = "9".repeat(120);
        let doc = TypeDocument {
            kind: Kind::Isogeny,
            polarizations: vec![vec!["1".into()], vec![huge.clone()]],
            matrices: vec![vec![vec!["1".into(), "0".into()], vec!["0".into(), huge]]],
            siegel_points: Some(vec![vec![vec![[0.0, 1.0]]]]),
            column_constraints: None,
        };
        let s1 = serde_json::to_string(&doc).unwrap();
        let back: TypeDocument = serde_json::from_str(&s1).unwrap();
        assert_eq!(back, doc);
        let s2 = serde_json::to_string(&back).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn malformed_digits_rejected() {
        assert!(parse_bigint("12x").is_err());
        assert!(parse_bigint("").is_err());
        assert!(matrix_from_doc(&vec![vec!["1".into()], vec!["2".into(), "3".into()]]).is_err());
    }
}
