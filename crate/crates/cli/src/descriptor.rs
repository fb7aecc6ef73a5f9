//! Variety descriptors: the JSON input format.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use eids::{AlgebraError, DetVariety, Field, Limits, LinearForm, MonomialOrder, PolyMatrix, Ring};
use serde::{Deserialize, Serialize};

use crate::status::{Failure, Status};

pub const SCHEMA: &str = "eids.variety/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyDescriptor {
    #[serde(default = "default_schema")]
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub variables: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub t: usize,
    /// Named linear forms, selectable with `--hyperplane NAME`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub hyperplanes: BTreeMap<String, String>,
}

fn default_schema() -> String {
    SCHEMA.to_string()
}

fn invalid(message: String) -> Failure {
    Failure::new(Status::Usage, message)
}

impl VarietyDescriptor {
    /// Parses and validates the shape. Polynomials are parsed by [`Self::build`].
    pub fn from_json(src: &str) -> Result<Self, Failure> {
        let d: VarietyDescriptor = serde_json::from_str(src)
            .map_err(|e| invalid(format!("{}:{}: {}", e.line(), e.column(), strip_position(&e.to_string()))))?;
        d.validate()?;
        Ok(d)
    }

    /// Reads a descriptor file; the label defaults to the file stem.
    pub fn read(path: &Path) -> Result<Self, Failure> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let mut d = Self::from_json(&src).map_err(|f| invalid(format!("{}:{}", path.display(), f.message)))?;
        if d.label.is_none() {
            d.label = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        Ok(d)
    }

    fn validate(&self) -> Result<(), Failure> {
        if self.schema != SCHEMA {
            return Err(invalid(format!("unsupported schema `{}` (expected `{SCHEMA}`)", self.schema)));
        }
        if self.variables.is_empty() {
            return Err(invalid("no variables declared".into()));
        }
        let m = self.matrix.len();
        let n = self.matrix.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(invalid("matrix is empty".into()));
        }
        if let Some(i) = self.matrix.iter().position(|row| row.len() != n) {
            return Err(invalid(format!("matrix is not rectangular: row {} has {} entries, row 1 has {n}", i + 1, self.matrix[i].len())));
        }
        if self.t == 0 || self.t > m.min(n) {
            return Err(invalid(format!("t = {} outside 1..={}", self.t, m.min(n))));
        }
        Ok(())
    }

    pub fn ring(&self, limits: Limits) -> Result<Arc<Ring>, Failure> {
        Ring::with_limits(&self.variables, MonomialOrder::DegRevLex, limits)
            .map_err(|e| invalid(format!("variables: {e}")))
    }

    pub fn matrix_in<K: Field>(&self, ring: &Arc<Ring>) -> Result<PolyMatrix<K>, Failure> {
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                eids::parse::parse_poly_in::<K>(ring, entry).map_err(|e| {
                    invalid(format!("matrix[{}][{}] `{entry}`: {}", i + 1, j + 1, describe(&e)))
                })?;
            }
        }
        PolyMatrix::parse(ring, &self.matrix).map_err(|e| invalid(format!("matrix: {e}")))
    }

    /// The determinantal variety; a codimension mismatch is reported as
    /// [`Status::Hypothesis`].
    pub fn build<K: Field>(&self, limits: Limits) -> Result<DetVariety<K>, Failure> {
        let ring = self.ring(limits)?;
        let matrix = self.matrix_in::<K>(&ring)?;
        DetVariety::build(matrix, self.t).map_err(|e| Failure::from_error("building the variety", &e))
    }

    pub fn hyperplane(&self, ring: &Arc<Ring>, name: &str) -> Result<LinearForm, Failure> {
        let src = self.hyperplanes.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.hyperplanes.keys().map(String::as_str).collect();
            invalid(format!("unknown hyperplane `{name}` (declared: {})", if known.is_empty() { "none".into() } else { known.join(", ") }))
        })?;
        LinearForm::parse(ring, src).map_err(|e| invalid(format!("hyperplane `{name}` `{src}`: {}", describe(&e))))
    }
}

fn describe(e: &AlgebraError) -> String {
    match e {
        AlgebraError::Parse(p) => format!("{}:{}: {}", p.line, p.column, p.message),
        e => e.to_string(),
    }
}

// serde_json appends " at line L column C"; the position is printed first instead.
fn strip_position(msg: &str) -> &str {
    msg.rfind(" at line ").map_or(msg, |i| &msg[..i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use eids::Q;

    const EXAMPLE: &str = r#"{
  "variables": ["x", "y", "z", "w"],
  "matrix": [["z", "y + w", "x"], ["w", "x", "y"]],
  "t": 2,
  "hyperplanes": {"w": "w"}
}"#;

    #[test]
    fn parses_and_builds() {
        let d = VarietyDescriptor::from_json(EXAMPLE).unwrap();
        let v = d.build::<Q>(Limits::default()).unwrap();
        assert_eq!((v.m(), v.n(), v.t(), v.dim()), (2, 3, 2, 2));
        assert_eq!(d.hyperplane(v.ring(), "w").unwrap().to_string(), "w");
    }

    #[test]
    fn json_errors_carry_positions() {
        let err = VarietyDescriptor::from_json("{\n  \"variables\": [\"x\",]\n}").unwrap_err();
        assert_eq!(err.status, Status::Usage);
        assert!(err.message.starts_with("2:"), "{}", err.message);
    }

    #[test]
    fn polynomial_errors_name_the_entry() {
        let src = EXAMPLE.replace("\"y + w\"", "\"y + * w\"");
        let d = VarietyDescriptor::from_json(&src).unwrap();
        let err = d.build::<Q>(Limits::default()).unwrap_err();
        assert!(err.message.starts_with("matrix[1][2] `y + * w`: 1:"), "{}", err.message);
    }

    #[test]
    fn shape_is_validated() {
        let ragged = EXAMPLE.replace("[\"w\", \"x\", \"y\"]", "[\"w\", \"x\"]");
        assert!(VarietyDescriptor::from_json(&ragged).unwrap_err().message.contains("not rectangular"));
        let big_t = EXAMPLE.replace("\"t\": 2", "\"t\": 3");
        assert!(VarietyDescriptor::from_json(&big_t).unwrap_err().message.contains("outside 1..=2"));
        let unknown = EXAMPLE.replace("\"x\", \"y\", \"z\", \"w\"", "\"x\", \"y\", \"z\"");
        let d = VarietyDescriptor::from_json(&unknown).unwrap();
        assert!(d.build::<Q>(Limits::default()).unwrap_err().message.contains("unknown variable"));
    }

    #[test]
    fn degenerate_matrix_is_not_determinantal() {
        let src = r#"{"variables": ["x", "y"], "matrix": [["x", "0", "0"], ["0", "0", "0"]], "t": 2}"#;
        let d = VarietyDescriptor::from_json(src).unwrap();
        assert_eq!(d.build::<Q>(Limits::default()).unwrap_err().status, Status::Hypothesis);
    }
}
