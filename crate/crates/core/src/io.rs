//! JSON file format shared by the CLI and the harness.
//!
//! ```json
//! {"kind": "primitive", "breakpoints": [0, 1], "pieces": [[0, 1]],
//!  "left_tail": 0, "right_tail": 1}
//! ```
//!
//! Pieces are coefficient rows in the local variable `t = x - x_left`,
//! constant term first. `point_values` (BV only) lists `[x, value]` pairs.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bv::{BVFunction, L1Function};
use crate::error::{CpintError, Result};
use crate::piecewise::PiecewisePolynomial;
use crate::primitive::{ContinuousPrimitive, Distribution, TestFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Primitive,
    Bv,
    L1,
    Test,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionFile {
    pub kind: Kind,
    pub breakpoints: Vec<f64>,
    pub pieces: Vec<Vec<f64>>,
    #[serde(default)]
    pub left_tail: f64,
    #[serde(default)]
    pub right_tail: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub point_values: Vec<(f64, f64)>,
}

impl FunctionFile {
    pub fn from_rep(kind: Kind, rep: &PiecewisePolynomial) -> Self {
        FunctionFile {
            kind,
            breakpoints: rep.breakpoints().to_vec(),
            pieces: rep.coefficient_rows(),
            left_tail: rep.left_tail(),
            right_tail: rep.right_tail(),
            point_values: Vec::new(),
        }
    }

    pub fn from_distribution(f: &Distribution) -> Self {
        Self::from_rep(Kind::Primitive, f.primitive().rep())
    }

    pub fn from_bv(g: &BVFunction) -> Self {
        FunctionFile { point_values: g.point_values().to_vec(), ..Self::from_rep(Kind::Bv, g.rep()) }
    }

    pub fn from_l1(g: &L1Function) -> Self {
        Self::from_rep(Kind::L1, g.rep())
    }

    pub fn from_test(phi: &TestFunction) -> Self {
        Self::from_rep(Kind::Test, phi.rep())
    }

    /// The piecewise polynomial, with the degree cap relaxed to fit the data.
    pub fn rep(&self) -> Result<PiecewisePolynomial> {
        let deg = self.pieces.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0);
        PiecewisePolynomial::with_degree_cap(
            self.breakpoints.clone(),
            self.pieces.clone(),
            self.left_tail,
            self.right_tail,
            deg.max(crate::piecewise::DEFAULT_DEGREE_CAP),
        )
    }

    fn expect(&self, kinds: &[Kind]) -> Result<()> {
        if kinds.contains(&self.kind) {
            Ok(())
        } else {
            Err(CpintError::InvalidRepresentation(format!("expected kind {kinds:?}, found {:?}", self.kind)))
        }
    }

    pub fn to_distribution(&self) -> Result<Distribution> {
        self.expect(&[Kind::Primitive])?;
        Ok(crate::primitive::make_distribution(ContinuousPrimitive::new(self.rep()?)?))
    }

    /// Accepts `bv` and `l1` files.
    pub fn to_bv(&self) -> Result<BVFunction> {
        self.expect(&[Kind::Bv, Kind::L1])?;
        BVFunction::new(self.rep()?, self.point_values.clone())
    }

    pub fn to_l1(&self) -> Result<L1Function> {
        self.expect(&[Kind::L1])?;
        L1Function::new(self.rep()?)
    }

    pub fn to_test(&self) -> Result<TestFunction> {
        self.expect(&[Kind::Test])?;
        TestFunction::new(self.rep()?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CpintError::InvalidRepresentation(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| CpintError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json() + "\n").map_err(|e| CpintError::Io(format!("{}: {e}", path.display())))
    }
}

/// `x,value` CSV text for the given samples.
pub fn samples_to_csv(samples: &[(f64, f64)]) -> String {
    let mut out = String::from("x,value\n");
    for (x, v) in samples {
        out.push_str(&format!("{x},{v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn round_trips() {
        let f = f_tent();
        let back = FunctionFile::from_json(&FunctionFile::from_distribution(&f).to_json()).unwrap();
        assert_eq!(back.to_distribution().unwrap(), f);
        let g = BVFunction::indicator_open_ray(0.0);
        let back = FunctionFile::from_json(&FunctionFile::from_bv(&g).to_json()).unwrap();
        assert_eq!(back.to_bv().unwrap(), g);
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let file = FunctionFile::from_l1(&l1_box());
        assert!(file.to_distribution().is_err());
        assert!(file.to_bv().is_ok());
    }

    #[test]
    fn minimal_file_parses() {
        let text = r#"{"kind":"primitive","breakpoints":[0,1],"pieces":[[0,1]],"right_tail":1}"#;
        let f = FunctionFile::from_json(text).unwrap().to_distribution().unwrap();
        assert_eq!(f.total(), 1.0);
    }
}
