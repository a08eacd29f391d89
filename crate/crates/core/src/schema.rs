//! The JSON form file: `{"gram": [[..]], "g": [..]?, "f": [..]?, "sigma": n?, "Lambda": n?}`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::{GramForm, IntegralFunctional, ModTwoFunctional};
use crate::intlin::IntMatrix;
use crate::obstruction::ObstructionData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid form file at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("gram is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("gram is not symmetric: entry ({row}, {col}) differs from ({col}, {row})")]
    NotSymmetric { row: usize, col: usize },

    #[error("field `{field}` has length {found}, expected {expected}")]
    Length { field: &'static str, expected: usize, found: usize },

    #[error("missing field `{0}`")]
    MissingField(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFormFile {
    gram: IntMatrix,
    #[serde(default)]
    g: Option<ModTwoFunctional>,
    #[serde(default)]
    f: Option<IntegralFunctional>,
    #[serde(default, with = "crate::json::opt_int")]
    sigma: Option<BigInt>,
    #[serde(rename = "Lambda", default, with = "crate::json::opt_int")]
    lambda: Option<BigInt>,
}

/// A validated form file: square symmetric Gram matrix and functionals of
/// matching length. Unimodularity is not required here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormFile {
    pub form: GramForm,
    pub g: Option<ModTwoFunctional>,
    pub f: Option<IntegralFunctional>,
    pub sigma: Option<BigInt>,
    pub lambda: Option<BigInt>,
}

impl FormFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let raw: RawFormFile = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: strip_location(&e.to_string()),
        })?;
        let gram = raw.gram;
        if gram.rows() != gram.cols() {
            return Err(ParseError::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if let Some((row, col)) = gram.first_asymmetry() {
            return Err(ParseError::NotSymmetric { row, col });
        }
        let rank = gram.rows();
        if let Some(g) = &raw.g {
            check_len("g", rank, g.len())?;
        }
        if let Some(f) = &raw.f {
            check_len("f", rank, f.len())?;
        }
        let form = GramForm::new(gram).map_err(|_| ParseError::NotSquare { rows: rank, cols: rank })?;
        Ok(FormFile {
            form,
            g: raw.g,
            f: raw.f,
            sigma: raw.sigma,
            lambda: raw.lambda,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = RawFormFile {
            gram: self.form.gram().clone(),
            g: self.g.clone(),
            f: self.f.clone(),
            sigma: self.sigma.clone(),
            lambda: self.lambda.clone(),
        };
        serde_json::to_string(&raw).expect("form file serializes")
    }

    pub fn require_g(&self) -> Result<&ModTwoFunctional, ParseError> {
        self.g.as_ref().ok_or(ParseError::MissingField("g"))
    }

    pub fn require_f(&self) -> Result<&IntegralFunctional, ParseError> {
        self.f.as_ref().ok_or(ParseError::MissingField("f"))
    }

    pub fn obstruction_data(&self) -> Result<ObstructionData, ParseError> {
        Ok(ObstructionData {
            form: self.form.clone(),
            f: self.require_f()?.clone(),
            g: self.require_g()?.clone(),
            sigma: self.sigma.clone(),
            lambda: self.lambda.clone(),
        })
    }
}

fn check_len(field: &'static str, expected: usize, found: usize) -> Result<(), ParseError> {
    if expected == found {
        Ok(())
    } else {
        Err(ParseError::Length { field, expected, found })
    }
}

/// serde_json appends " at line L column C"; the location is kept separately.
fn strip_location(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_file() {
        let ff = FormFile::parse(r#"{"gram": [[1,0],[0,-1]], "g": [1,0], "f": [0,3], "sigma": 0, "Lambda": -4}"#).unwrap();
        assert_eq!(ff.form, GramForm::standard_odd(1));
        assert_eq!(ff.g.unwrap().bits(), &[1, 0]);
        assert_eq!(ff.f.unwrap().coeffs(), &[BigInt::from(0), BigInt::from(3)]);
        assert_eq!(ff.lambda, Some(BigInt::from(-4)));
    }

    #[test]
    fn huge_entries_survive() {
        let big = "123456789012345678901234567890";
        let ff = FormFile::parse(&format!(r#"{{"gram": [[{big}]]}}"#)).unwrap();
        assert_eq!(ff.form.gram().get(0, 0).to_string(), big);
        assert_eq!(FormFile::parse(&ff.to_json()).unwrap(), ff);
    }

    #[test]
    fn rejects_floats_and_bad_bits() {
        for text in [
            r#"{"gram": [[1.0]]}"#,
            r#"{"gram": [[1e2]]}"#,
            r#"{"gram": [[1]], "g": [2]}"#,
            r#"{"gram": [[1]], "f": [0.5]}"#,
            r#"{"gram": [[1]], "sigma": 0.0}"#,
            r#"{"gram": [[1]], "extra": 1}"#,
            r#"{"g": [1]}"#,
            r#"[1, 2]"#,
        ] {
            assert!(matches!(FormFile::parse(text), Err(ParseError::Syntax { .. })), "{text}");
        }
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            FormFile::parse(r#"{"gram": [[0,1],[2,0]]}"#),
            Err(ParseError::NotSymmetric { row: 0, col: 1 })
        );
        assert_eq!(
            FormFile::parse(r#"{"gram": [[0,1,2],[1,0,0]]}"#),
            Err(ParseError::NotSquare { rows: 2, cols: 3 })
        );
        assert!(matches!(FormFile::parse(r#"{"gram": [[0,1],[1]]}"#), Err(ParseError::Syntax { .. })));
        assert_eq!(
            FormFile::parse(r#"{"gram": [[0,1],[1,0]], "g": [1]}"#),
            Err(ParseError::Length { field: "g", expected: 2, found: 1 })
        );
        let ff = FormFile::parse(r#"{"gram": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(ff.require_g(), Err(ParseError::MissingField("g")));
    }
}
