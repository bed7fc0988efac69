//! JSON group files.
//!
//! ```json
//! {"name": "pauli1", "conductor": 4, "degree": 2, "tensor_factors": [2],
//!  "generators": [[[[], [[1,1,0]]], [[[1,1,0]], []]]], "cap": 1000}
//! ```
//!
//! Each matrix entry is a list of terms `[num, den, k]` meaning
//! `num/den · E(conductor)^k`.

use serde::{Deserialize, Serialize};

use super::{group_closure, UnitaryRep};
use crate::cyclo::Term;
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub conductor: u32,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor_factors: Option<Vec<usize>>,
    pub generators: Vec<Vec<Vec<Vec<Term>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

impl GroupFile {
    /// Encodes generator matrices over `Q(E(conductor))`.
    pub fn new(name: impl Into<String>, conductor: u32, generators: &[CycMatrix]) -> Result<Self> {
        let degree = generators.first().map_or(0, CycMatrix::dim);
        Ok(GroupFile {
            name: name.into(),
            conductor,
            degree,
            tensor_factors: None,
            generators: generators
                .iter()
                .map(|g| g.to_terms(conductor))
                .collect::<Result<_>>()?,
            cap: None,
        })
    }

    pub fn generator_matrices(&self) -> Result<Vec<CycMatrix>> {
        if self.conductor == 0 {
            return Err(Error::Parse("conductor must be positive".into()));
        }
        self.generators
            .iter()
            .enumerate()
            .map(|(k, rows)| {
                if rows.len() != self.degree || rows.iter().any(|r| r.len() != self.degree) {
                    return Err(Error::ShapeMismatch(format!(
                        "generator {k} is not {0}x{0}",
                        self.degree
                    )));
                }
                CycMatrix::from_terms(self.conductor, rows)
            })
            .collect()
    }

    /// Closes the generators; the file's own cap wins over `default_cap`.
    pub fn build(&self, default_cap: usize) -> Result<UnitaryRep> {
        let gens = self.generator_matrices()?;
        let rep = group_closure(&gens, self.cap.unwrap_or(default_cap))?.with_name(self.name.clone());
        Ok(match &self.tensor_factors {
            Some(dims) => rep.with_tensor_factors(dims.clone()),
            None => rep,
        })
    }
}

pub fn load_group_file(path: &str, default_cap: usize) -> Result<UnitaryRep> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_string(),
        source,
    })?;
    let file: GroupFile = serde_json::from_str(&text)?;
    file.build(default_cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doc_example_parses() {
        let text = r#"{"name": "pauli1", "conductor": 4, "degree": 2, "tensor_factors": [2],
            "generators": [[[[], [[1,1,0]]], [[[1,1,0]], []]]], "cap": 1000}"#;
        let file: GroupFile = serde_json::from_str(text).unwrap();
        let rep = file.build(10).unwrap();
        assert_eq!(rep.order(), 2);
        assert_eq!(rep.weight(1), Some(1));
    }

    #[test]
    fn round_trip_and_shape_errors() {
        let x = CycMatrix::from_integers(&[&[0, 1], &[1, 0]]);
        let z = CycMatrix::from_integers(&[&[1, 0], &[0, -1]]);
        let file = GroupFile::new("d4", 4, &[x, z]).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let back: GroupFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.build(100).unwrap().order(), 8);
        let mut bad = file.clone();
        bad.degree = 3;
        assert!(matches!(bad.build(100), Err(Error::ShapeMismatch(_))));
    }
}
