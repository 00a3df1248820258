use serde::{Deserialize, Serialize};

use crate::complex::FiniteOrderedComplex;
use crate::error::{Error, Result};

/// A class of finite ordered complexes cut out by a face-size bound.
///
/// `max_face_size = None` is the full class of finite ordered polyhedra;
/// `Some(k)` keeps only complexes whose faces have at most `k` vertices.
/// `k = 1` gives pure sets (only singleton faces), `k = 2` ordered graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassSpec {
    pub max_face_size: Option<usize>,
}

impl ClassSpec {
    pub fn unbounded() -> Self {
        ClassSpec {
            max_face_size: None,
        }
    }

    pub fn bounded(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("face-size bound k must be at least 1"));
        }
        Ok(ClassSpec {
            max_face_size: Some(k),
        })
    }

    /// Parses the CLI convention: 0 = unbounded, k >= 1 = bounded.
    pub fn from_k(k: usize) -> Self {
        if k == 0 {
            ClassSpec::unbounded()
        } else {
            ClassSpec {
                max_face_size: Some(k),
            }
        }
    }

    /// Class membership. The empty complex is excluded: structure classes
    /// require a nonempty universe.
    pub fn contains(&self, c: &FiniteOrderedComplex) -> bool {
        if c.is_empty() {
            return false;
        }
        match self.max_face_size {
            None => true,
            Some(k) => c.facets().iter().all(|f| f.len() <= k),
        }
    }

    /// Largest vertex count `enumerate_class` accepts for this class.
    pub fn enumeration_guard(&self) -> usize {
        match self.max_face_size {
            Some(1) => 64,
            Some(2) => 8,
            _ => 6,
        }
    }
}

impl std::fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.max_face_size {
            None => write!(f, "unbounded"),
            Some(k) => write!(f, "k={k}"),
        }
    }
}
