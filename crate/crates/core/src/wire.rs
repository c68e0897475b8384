//! JSON and CSV wire formats shared with the CLI and the Python binding.
//!
//! Complex scalars travel as `[re, im]` pairs and matrices as row-major
//! nested arrays of such pairs. Input documents reject unknown fields;
//! the optional `schema` field, when present, must match the expected
//! version tag. Output documents always carry it.

use serde::{Deserialize, Serialize};

use crate::decompose::{DecompositionResult, VerificationReport};
use crate::error::{GammaError, Result};
use crate::linalg::{cplx, CMatrix};
use crate::operator::OperatorTuple;
use crate::pencil::PencilScanReport;
use crate::point::GammaPoint;

pub const SCHEMA_POINT: &str = "gammakit/point/v1";
pub const SCHEMA_TUPLE: &str = "gammakit/tuple/v1";
pub const SCHEMA_DECOMPOSITION: &str = "gammakit/decomposition/v1";
pub const SCHEMA_GROUND_TRUTH: &str = "gammakit/ground-truth/v1";
pub const SCHEMA_SCAN_CSV: &str = "gammakit/scan-csv/v1";
pub const SCHEMA_SLICE_CSV: &str = "gammakit/region-slice-csv/v1";

fn check_schema(found: &Option<String>, expected: &str) -> Result<()> {
    if let Some(s) = found {
        if s != expected {
            return Err(GammaError::InvalidArgument(format!(
                "schema mismatch: expected '{expected}', found '{s}'"
            )));
        }
    }
    Ok(())
}

/// `{"n": int, "s": [[re,im],…], "p": [re,im]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub n: usize,
    pub s: Vec<(f64, f64)>,
    pub p: (f64, f64),
}

impl PointDoc {
    pub fn from_point(point: &GammaPoint) -> Self {
        PointDoc {
            schema: Some(SCHEMA_POINT.into()),
            n: point.n(),
            s: point.s().iter().map(|z| (z.re, z.im)).collect(),
            p: (point.p().re, point.p().im),
        }
    }

    pub fn into_point(self) -> Result<GammaPoint> {
        check_schema(&self.schema, SCHEMA_POINT)?;
        if self.n != self.s.len() + 1 {
            return Err(GammaError::InvalidArgument(format!(
                "inconsistent point document: n = {} but {} symmetric coordinates",
                self.n,
                self.s.len()
            )));
        }
        GammaPoint::new(
            self.s.iter().map(|&(re, im)| cplx(re, im)).collect(),
            cplx(self.p.0, self.p.1),
        )
    }
}

pub fn point_to_json(point: &GammaPoint) -> String {
    serde_json::to_string_pretty(&PointDoc::from_point(point)).expect("point serialization")
}

pub fn point_from_json(text: &str) -> Result<GammaPoint> {
    let doc: PointDoc = serde_json::from_str(text)
        .map_err(|e| GammaError::InvalidArgument(format!("malformed point JSON: {e}")))?;
    doc.into_point()
}

/// `{"n": int, "dim": int, "S": [matrix,…], "P": matrix}` with matrices
/// row-major `[[[re,im],…],…]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub n: usize,
    pub dim: usize,
    #[serde(rename = "S")]
    pub s: Vec<Vec<Vec<(f64, f64)>>>,
    #[serde(rename = "P")]
    pub p: Vec<Vec<(f64, f64)>>,
}

pub fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<(f64, f64)>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| (m[(i, j)].re, m[(i, j)].im)).collect())
        .collect()
}

pub fn rows_to_matrix(rows: &[Vec<(f64, f64)>], dim: usize, what: &str) -> Result<CMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(GammaError::InvalidArgument(format!(
            "{what} must be a {dim}×{dim} row-major matrix"
        )));
    }
    Ok(CMatrix::from_fn(dim, dim, |i, j| {
        cplx(rows[i][j].0, rows[i][j].1)
    }))
}

impl TupleDoc {
    pub fn from_tuple(tuple: &OperatorTuple) -> Self {
        TupleDoc {
            schema: Some(SCHEMA_TUPLE.into()),
            n: tuple.n(),
            dim: tuple.dim(),
            s: tuple.s().iter().map(matrix_to_rows).collect(),
            p: matrix_to_rows(tuple.p()),
        }
    }

    pub fn into_tuple(self) -> Result<OperatorTuple> {
        check_schema(&self.schema, SCHEMA_TUPLE)?;
        if self.n != self.s.len() + 1 {
            return Err(GammaError::InvalidArgument(format!(
                "inconsistent tuple document: n = {} but {} S matrices",
                self.n,
                self.s.len()
            )));
        }
        let s = self
            .s
            .iter()
            .enumerate()
            .map(|(k, rows)| rows_to_matrix(rows, self.dim, &format!("S{}", k + 1)))
            .collect::<Result<Vec<_>>>()?;
        let p = rows_to_matrix(&self.p, self.dim, "P")?;
        OperatorTuple::new(s, p)
    }
}

pub fn tuple_to_json(tuple: &OperatorTuple) -> String {
    serde_json::to_string_pretty(&TupleDoc::from_tuple(tuple)).expect("tuple serialization")
}

pub fn tuple_from_json(text: &str) -> Result<OperatorTuple> {
    let doc: TupleDoc = serde_json::from_str(text)
        .map_err(|e| GammaError::InvalidArgument(format!("malformed tuple JSON: {e}")))?;
    doc.into_tuple()
}

/// JSON document for a decomposition plus its verification report.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionDoc {
    pub schema: String,
    pub n: usize,
    pub dim: usize,
    pub unitary_dim: usize,
    pub basis_h1: Vec<Vec<(f64, f64)>>,
    pub basis_h2: Vec<Vec<(f64, f64)>>,
    pub unitary_part: TupleDoc,
    pub cnu_part: TupleDoc,
    pub residuals: Vec<crate::decompose::BlockResidual>,
    pub verification: VerificationReport,
}

impl DecompositionDoc {
    pub fn new(
        tuple: &OperatorTuple,
        result: &DecompositionResult,
        verification: VerificationReport,
    ) -> Self {
        DecompositionDoc {
            schema: SCHEMA_DECOMPOSITION.into(),
            n: tuple.n(),
            dim: tuple.dim(),
            unitary_dim: result.unitary_dim(),
            basis_h1: basis_rows(&result.basis_h1),
            basis_h2: basis_rows(&result.basis_h2),
            unitary_part: TupleDoc::from_tuple(&result.unitary_part),
            cnu_part: TupleDoc::from_tuple(&result.cnu_part),
            residuals: result.residuals.clone(),
            verification,
        }
    }
}

fn basis_rows(m: &CMatrix) -> Vec<Vec<(f64, f64)>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| (m[(i, j)].re, m[(i, j)].im)).collect())
        .collect()
}

/// CSV export of a scan report, one row per `(i, α)` sample.
///
/// Scalar scans fill the modulus columns; operator scans leave them
/// empty. The first line is a `#`-prefixed schema comment.
pub fn scan_to_csv(report: &PencilScanReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {SCHEMA_SCAN_CSV}\n"));
    out.push_str("i,re_alpha,im_alpha,phi_value,modulus_lhs,modulus_rhs\n");
    for s in &report.samples {
        let lhs = s
            .modulus_lhs
            .map(|v| v.to_string())
            .unwrap_or_default();
        let rhs = s
            .modulus_rhs
            .map(|v| v.to_string())
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            s.i, s.alpha.0, s.alpha.1, s.value, lhs, rhs
        ));
    }
    out
}

/// Marker trait-ish helper: serialize any serde value as pretty JSON.
pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cplx;

    #[test]
    fn point_round_trip() {
        let pt = GammaPoint::new(vec![cplx(1.0, -0.5), cplx(0.25, 0.0)], cplx(0.0, 0.5)).unwrap();
        let json = point_to_json(&pt);
        let back = point_from_json(&json).unwrap();
        assert_eq!(back.coords(), pt.coords());
    }

    #[test]
    fn point_json_matches_documented_shape() {
        let json = r#"{"n": 2, "s": [[2.0, 0.0]], "p": [1.0, 0.0]}"#;
        let pt = point_from_json(json).unwrap();
        assert_eq!(pt.n(), 2);
        assert_eq!(pt.p(), cplx(1.0, 0.0));
    }

    #[test]
    fn unknown_fields_rejected() {
        let json = r#"{"n": 2, "s": [[2.0, 0.0]], "p": [1.0, 0.0], "extra": 1}"#;
        assert!(point_from_json(json).is_err());
    }

    #[test]
    fn schema_mismatch_rejected() {
        let json = r#"{"schema": "gammakit/tuple/v1", "n": 2, "s": [[2.0, 0.0]], "p": [1.0, 0.0]}"#;
        assert!(point_from_json(json).is_err());
    }

    #[test]
    fn inconsistent_n_rejected() {
        let json = r#"{"n": 3, "s": [[2.0, 0.0]], "p": [1.0, 0.0]}"#;
        assert!(point_from_json(json).is_err());
    }

    #[test]
    fn tuple_round_trip() {
        let tuple = OperatorTuple::new(
            vec![CMatrix::from_row_slice(
                2,
                2,
                &[cplx(1.0, 0.0), cplx(0.0, 0.5), cplx(0.0, 0.0), cplx(0.25, 0.0)],
            )],
            CMatrix::identity(2, 2) * cplx(0.5, 0.0),
        )
        .unwrap();
        let json = tuple_to_json(&tuple);
        let back = tuple_from_json(&json).unwrap();
        assert_eq!(back, tuple);
    }
}
