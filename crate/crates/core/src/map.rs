//! Cubical maps and the local-isometry test.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::complex::{CubeComplex, CubeRef, Dart};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("no image given for cube `{0}`")]
    Missing(String),
    #[error("image of `{cube}` is `{image}`, which has the wrong dimension or does not exist")]
    BadImage { cube: String, image: String },
    #[error("map does not commute with face {axis},{side} of `{cube}`")]
    FaceMismatch { cube: String, axis: usize, side: u32 },
}

/// A dimension- and face-preserving map between cube complexes.
#[derive(Clone, Debug)]
pub struct CubicalMap {
    source: Arc<CubeComplex>,
    target: Arc<CubeComplex>,
    assignment: Vec<Vec<usize>>,
}

impl CubicalMap {
    pub fn new(
        source: Arc<CubeComplex>,
        target: Arc<CubeComplex>,
        assignment: Vec<Vec<usize>>,
    ) -> Result<CubicalMap, MapError> {
        for d in 0..=source.dim() {
            let row = assignment.get(d);
            for i in 0..source.count(d) {
                let c = CubeRef { dim: d, index: i };
                let Some(&img) = row.and_then(|r| r.get(i)) else {
                    return Err(MapError::Missing(source.name(c).to_string()));
                };
                if img >= target.count(d) {
                    return Err(MapError::BadImage {
                        cube: source.name(c).to_string(),
                        image: format!("#{img} in dimension {d}"),
                    });
                }
                if d > 0 {
                    let tc = CubeRef { dim: d, index: img };
                    for axis in 0..d {
                        for side in 0..2 {
                            let f = source.face(c, axis, side);
                            if assignment[d - 1][f.index] != target.face(tc, axis, side).index {
                                return Err(MapError::FaceMismatch {
                                    cube: source.name(c).to_string(),
                                    axis,
                                    side,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(CubicalMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from an id-to-id table.
    pub fn from_names(
        source: Arc<CubeComplex>,
        target: Arc<CubeComplex>,
        table: &HashMap<String, String>,
    ) -> Result<CubicalMap, MapError> {
        let mut assignment = Vec::new();
        for d in 0..=source.dim() {
            let mut row = Vec::new();
            for n in source.names(d) {
                let img = table.get(n).ok_or_else(|| MapError::Missing(n.clone()))?;
                match target.lookup(img) {
                    Some(r) if r.dim == d => row.push(r.index),
                    _ => {
                        return Err(MapError::BadImage {
                            cube: n.clone(),
                            image: img.clone(),
                        })
                    }
                }
            }
            assignment.push(row);
        }
        CubicalMap::new(source, target, assignment)
    }

    pub fn source(&self) -> &Arc<CubeComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CubeComplex> {
        &self.target
    }

    pub fn image(&self, c: CubeRef) -> CubeRef {
        CubeRef {
            dim: c.dim,
            index: self.assignment[c.dim][c.index],
        }
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.assignment[0][v]
    }

    pub fn edge(&self, e: usize) -> usize {
        self.assignment[1][e]
    }

    pub fn dart(&self, d: Dart) -> Dart {
        Dart::new(self.edge(d.edge), d.rev)
    }

    pub fn assignment(&self) -> &[Vec<usize>] {
        &self.assignment
    }

    /// Id-to-id table, the serialized form.
    pub fn to_names(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for d in 0..=self.source.dim() {
            for i in 0..self.source.count(d) {
                let c = CubeRef { dim: d, index: i };
                out.push((
                    self.source.name(c).to_string(),
                    self.target.name(self.image(c)).to_string(),
                ));
            }
        }
        out
    }

    /// The source-side germ over a target germ at `v`, if any. Unique when the
    /// map is a local isometry.
    pub fn lift_dart(&self, v: usize, d: Dart) -> Option<Dart> {
        self.source
            .out_darts(v)
            .iter()
            .copied()
            .find(|s| self.dart(*s) == d)
    }

    /// Link-injective with full image at every source vertex.
    pub fn is_local_isometry(&self) -> bool {
        self.local_isometry_failure().is_none()
    }

    /// The first source vertex where the link condition fails, with a reason.
    pub fn local_isometry_failure(&self) -> Option<(usize, &'static str)> {
        let y = &self.source;
        let x = &self.target;
        for v in 0..y.vertex_count() {
            let mut inv: HashMap<Dart, Dart> = HashMap::new();
            for d in y.out_darts(v) {
                if inv.insert(self.dart(*d), *d).is_some() {
                    return Some((v, "link map not injective"));
                }
            }
            let ylink = y.link(v);
            let ysimp: HashSet<Vec<Dart>> = ylink
                .simplices
                .iter()
                .map(|(g, _)| {
                    let mut g = g.clone();
                    g.sort();
                    g
                })
                .collect();
            let xlink = x.link(self.vertex(v));
            for (germs, _) in &xlink.simplices {
                if germs.iter().all(|g| inv.contains_key(g)) {
                    let mut pre: Vec<Dart> = germs.iter().map(|g| inv[g]).collect();
                    pre.sort();
                    if !ysimp.contains(&pre) {
                        return Some((v, "link image not full"));
                    }
                }
            }
        }
        None
    }
}
