use std::path::PathBuf;

use serde_json::{Map, Value};

use opalg::commutative::SequenceFunction;
use opalg::convex::{BimoduleElement, SegmentProgram};
use opalg::json;
use opalg::{Error, Matrix, Result};

/// Named entries merged from all `--input` files.
pub struct Inputs {
    entries: Map<String, Value>,
}

impl Inputs {
    pub fn load(paths: &[PathBuf]) -> Result<Self> {
        let mut entries = Map::new();
        for path in paths {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
            let doc = json::parse_document(&text)
                .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
            for (k, v) in doc {
                if entries.contains_key(&k) {
                    return Err(Error::Format(format!("entry {k:?} defined twice ({})", path.display())));
                }
                entries.insert(k, v);
            }
        }
        Ok(Self { entries })
    }

    fn get(&self, name: &str) -> Result<&Value> {
        self.entries.get(name).ok_or_else(|| Error::Format(format!("no entry named {name:?} in the inputs")))
    }

    fn context<T>(name: &str, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Format(m) => Error::Format(format!("{name}: {m}")),
            other => other,
        })
    }

    pub fn matrix(&self, name: &str) -> Result<Matrix<f64>> {
        Self::context(name, json::matrix_from_json(self.get(name)?))
    }

    pub fn matrices(&self, names: &[String]) -> Result<Vec<Matrix<f64>>> {
        names.iter().map(|n| self.matrix(n)).collect()
    }

    pub fn sequence(&self, name: &str) -> Result<SequenceFunction<f64>> {
        Self::context(name, json::sequence_from_json(self.get(name)?))
    }

    pub fn element(&self, name: &str) -> Result<BimoduleElement<f64>> {
        Self::context(name, json::element_from_json(self.get(name)?))
    }

    pub fn program(&self, name: &str) -> Result<SegmentProgram<f64>> {
        Self::context(name, json::program_from_json(self.get(name)?))
    }

    pub fn is_sequence(&self, name: &str) -> Result<bool> {
        Ok(self.get(name)?.get("samples").is_some())
    }

    /// All entry names in sorted order.
    pub fn names(&self) -> Vec<String> {
        self.entries.keys().cloned().collect()
    }
}
