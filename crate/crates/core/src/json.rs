//! JSON documents for complexes and presentations.
//!
//! Complex schema:
//!
//! ```text
//! {
//!   "cubes": [
//!     [ {"id": "v"} ],
//!     [ {"faces": [{"axis": 0, "cube": "v", "side": 0},
//!                  {"axis": 0, "cube": "v", "side": 1}], "id": "a"} ],
//!     ...
//!   ],
//!   "dim": 1,
//!   "labels": {"a": "a"}
//! }
//! ```
//!
//! `cubes[d]` lists the `d`-cubes. Each `d`-cube with `d > 0` lists its `2d`
//! faces in `(axis, side)` order, each naming a `(d-1)`-cube by id. Ids are
//! unique across all dimensions. `labels` is optional. Output always uses
//! sorted keys, two-space indentation and a trailing newline, so parsing and
//! re-serializing a canonical document reproduces it byte for byte.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, CubeComplex, CubeRef};
use crate::map::{CubicalMap, MapError};

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct RawFace {
    pub axis: usize,
    pub cube: String,
    pub side: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct RawCube {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<RawFace>,
    pub id: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct RawComplex {
    pub cubes: Vec<Vec<RawCube>>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct RawRelator {
    pub complex: RawComplex,
    pub map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct RawPresentation {
    pub alpha: String,
    pub base: RawComplex,
    #[serde(default)]
    pub normalized: bool,
    #[serde(default)]
    pub relators: Vec<RawRelator>,
}

#[derive(thiserror::Error, Debug)]
pub enum DocError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("relator {index}: {source}")]
    Map { index: usize, source: MapError },
    #[error("bad alpha `{0}`")]
    Alpha(String),
}

impl RawComplex {
    pub fn into_complex(self) -> Result<CubeComplex, ComplexError> {
        if self.cubes.len() != self.dim + 1 {
            return Err(ComplexError::Malformed(format!(
                "dim is {} but {} cube layers are given",
                self.dim,
                self.cubes.len()
            )));
        }
        let mut ids: Vec<HashMap<&str, usize>> = Vec::new();
        for layer in &self.cubes {
            ids.push(layer.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect());
        }
        let mut names = Vec::new();
        let mut faces = Vec::new();
        for (d, layer) in self.cubes.iter().enumerate() {
            let mut nrow = Vec::new();
            let mut frow = Vec::new();
            for c in layer {
                if d == 0 && !c.faces.is_empty() {
                    return Err(ComplexError::InconsistentFaces {
                        cube: c.id.clone(),
                        detail: "vertices have no faces".into(),
                    });
                }
                let mut slots: Vec<Option<usize>> = vec![None; 2 * d];
                for f in &c.faces {
                    if f.axis >= d || f.side > 1 {
                        return Err(ComplexError::InconsistentFaces {
                            cube: c.id.clone(),
                            detail: format!("face ({}, {}) out of range", f.axis, f.side),
                        });
                    }
                    let idx = ids[d - 1].get(f.cube.as_str()).copied().ok_or_else(|| {
                        ComplexError::DanglingReference {
                            cube: c.id.clone(),
                            face: f.cube.clone(),
                        }
                    })?;
                    let slot = &mut slots[2 * f.axis + f.side as usize];
                    if slot.is_some() {
                        return Err(ComplexError::InconsistentFaces {
                            cube: c.id.clone(),
                            detail: format!("face ({}, {}) given twice", f.axis, f.side),
                        });
                    }
                    *slot = Some(idx);
                }
                let full: Option<Vec<usize>> = slots.into_iter().collect();
                let Some(full) = full else {
                    return Err(ComplexError::InconsistentFaces {
                        cube: c.id.clone(),
                        detail: format!("expected {} faces, found {}", 2 * d, c.faces.len()),
                    });
                };
                nrow.push(c.id.clone());
                frow.push(full);
            }
            names.push(nrow);
            faces.push(frow);
        }
        CubeComplex::from_parts(names, faces, self.labels)
    }

    pub fn from_complex(x: &CubeComplex) -> RawComplex {
        let mut cubes = Vec::new();
        for d in 0..=x.dim() {
            let mut layer = Vec::new();
            for i in 0..x.count(d) {
                let c = CubeRef { dim: d, index: i };
                let mut faces = Vec::new();
                for axis in 0..d {
                    for side in 0..2 {
                        faces.push(RawFace {
                            axis,
                            cube: x.name(x.face(c, axis, side)).to_string(),
                            side,
                        });
                    }
                }
                layer.push(RawCube {
                    faces,
                    id: x.name(c).to_string(),
                });
            }
            cubes.push(layer);
        }
        RawComplex {
            cubes,
            dim: x.dim(),
            labels: x.labels().clone(),
        }
    }
}

/// Serializes any value with sorted keys and a trailing newline.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable value");
    let mut s = serde_json::to_string_pretty(&v).expect("json value");
    s.push('\n');
    s
}

pub fn parse_complex(text: &str) -> Result<CubeComplex, DocError> {
    let raw: RawComplex = serde_json::from_str(text)?;
    Ok(raw.into_complex()?)
}

pub fn complex_to_string(x: &CubeComplex) -> String {
    to_canonical_string(&RawComplex::from_complex(x))
}

/// A presentation document resolved into complexes and maps.
pub struct ParsedPresentation {
    pub base: Arc<CubeComplex>,
    pub relators: Vec<(String, CubicalMap)>,
    pub alpha: Ratio<i64>,
    pub normalized: bool,
}

pub fn parse_alpha(s: &str) -> Result<Ratio<i64>, DocError> {
    let a: Ratio<i64> = s.trim().parse().map_err(|_| DocError::Alpha(s.to_string()))?;
    if a <= Ratio::from_integer(0) || a >= Ratio::from_integer(1) {
        return Err(DocError::Alpha(s.to_string()));
    }
    Ok(a)
}

impl RawPresentation {
    pub fn resolve(self) -> Result<ParsedPresentation, DocError> {
        let alpha = parse_alpha(&self.alpha)?;
        let base = Arc::new(self.base.into_complex()?);
        let mut relators = Vec::new();
        for (index, r) in self.relators.into_iter().enumerate() {
            let y = Arc::new(r.complex.into_complex()?);
            let table: HashMap<String, String> = r.map.into_iter().collect();
            let f = CubicalMap::from_names(y, base.clone(), &table)
                .map_err(|source| DocError::Map { index, source })?;
            relators.push((r.name.unwrap_or_else(|| format!("Y{index}")), f));
        }
        Ok(ParsedPresentation {
            base,
            relators,
            alpha,
            normalized: self.normalized,
        })
    }
}

/// Reads either a presentation document or a bare complex (no relators).
pub fn parse_document(text: &str) -> Result<ParsedPresentation, DocError> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    if v.get("base").is_some() {
        let raw: RawPresentation = serde_json::from_value(v)?;
        raw.resolve()
    } else {
        let raw: RawComplex = serde_json::from_value(v)?;
        Ok(ParsedPresentation {
            base: Arc::new(raw.into_complex()?),
            relators: Vec::new(),
            alpha: Ratio::new(1, 144),
            normalized: true,
        })
    }
}
