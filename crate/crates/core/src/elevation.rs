//! Elevations of relator complexes into a developed ball.
//!
//! An elevation is grown from a seed pair `(u, y)` with `u` a ball vertex and
//! `y` a relator vertex over the same base vertex, by lifting relator edges
//! through the ball. The image of an elevation is convex, so its trace in the
//! ball is connected and the growth finds all of it.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::ball::DevelopedBall;
use crate::geometry::Subcomplex;
use crate::map::CubicalMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elevation {
    pub relator: usize,
    /// Ball vertices of the image, sorted.
    pub image: Subcomplex,
    /// Relator vertex over each image vertex, parallel to `image.vertices`.
    pub labels: Vec<usize>,
    /// Seed correspondence: least image vertex and its relator vertex.
    pub basepoint: (usize, usize),
}

impl Elevation {
    pub fn contains(&self, v: usize) -> bool {
        self.image.contains(v)
    }

    pub fn label_of(&self, v: usize) -> Option<usize> {
        self.image.vertices.binary_search(&v).ok().map(|i| self.labels[i])
    }

    /// Display name: relator index and seed.
    pub fn name(&self, ball: &DevelopedBall) -> String {
        format!(
            "Y{}@{}#{}",
            self.relator,
            ball.complex().vertex_name(self.basepoint.0),
            self.basepoint.1
        )
    }
}

/// Grows the elevation through the pair `(u, y)`.
pub fn grow(f: &CubicalMap, ball: &DevelopedBall, u: usize, y: usize) -> Vec<(usize, usize)> {
    let ycx = f.source();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut stack = vec![(u, y)];
    seen.insert((u, y));
    while let Some((v, w)) = stack.pop() {
        for &d in ycx.out_darts(w) {
            if let Some(v2) = ball.step(v, f.dart(d)) {
                let p = (v2, ycx.head(d));
                if seen.insert(p) {
                    stack.push(p);
                }
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = seen.into_iter().collect();
    pairs.sort_unstable();
    pairs
}

fn from_pairs(relator: usize, pairs: Vec<(usize, usize)>) -> Elevation {
    let mut by_vertex: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, y) in pairs {
        by_vertex.entry(v).or_insert(y);
    }
    let vertices: Vec<usize> = by_vertex.keys().copied().collect();
    let labels: Vec<usize> = by_vertex.values().copied().collect();
    let basepoint = (vertices[0], labels[0]);
    Elevation {
        relator,
        image: Subcomplex { vertices },
        labels,
        basepoint,
    }
}

/// All elevations of relator `relator` meeting the ball vertices of depth at
/// most `core`, deduplicated by image and sorted by seed.
pub fn elevations(f: &CubicalMap, relator: usize, ball: &DevelopedBall, core: usize) -> Vec<Elevation> {
    let mut over: HashMap<usize, Vec<usize>> = HashMap::new();
    for y in 0..f.source().vertex_count() {
        over.entry(f.vertex(y)).or_default().push(y);
    }
    let mut covered: HashSet<(usize, usize)> = HashSet::new();
    let mut by_image: BTreeMap<Vec<usize>, Elevation> = BTreeMap::new();
    for u in 0..ball.vertex_count() {
        if ball.depth(u) > core {
            continue;
        }
        let Some(ys) = over.get(&ball.project_vertex(u)) else { continue };
        for &y in ys {
            if covered.contains(&(u, y)) {
                continue;
            }
            let pairs = grow(f, ball, u, y);
            covered.extend(pairs.iter().copied());
            let e = from_pairs(relator, pairs);
            by_image.entry(e.image.vertices.clone()).or_insert(e);
        }
    }
    let mut out: Vec<Elevation> = by_image.into_values().collect();
    out.sort_by_key(|e| e.basepoint);
    out
}

/// Elevations through a given ball vertex.
pub fn elevations_through(f: &CubicalMap, relator: usize, ball: &DevelopedBall, u: usize) -> Vec<Elevation> {
    let mut out: BTreeMap<Vec<usize>, Elevation> = BTreeMap::new();
    for y in 0..f.source().vertex_count() {
        if f.vertex(y) == ball.project_vertex(u) {
            let e = from_pairs(relator, grow(f, ball, u, y));
            out.entry(e.image.vertices.clone()).or_insert(e);
        }
    }
    out.into_values().collect()
}

/// Elevations containing a given ball edge.
pub fn elevations_through_edge(
    f: &CubicalMap,
    relator: usize,
    ball: &DevelopedBall,
    edge: usize,
) -> Vec<Elevation> {
    let x = ball.complex();
    let (s, t) = (x.source(edge), x.target(edge));
    elevations_through(f, relator, ball, s)
        .into_iter()
        .filter(|e| e.contains(t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::develop_ball;
    use crate::complex::{ComplexBuilder, CubeComplex};
    use std::sync::Arc;

    fn wedge() -> Arc<CubeComplex> {
        let mut b = ComplexBuilder::new();
        let v = b.add_vertex("v");
        b.add_edge("a", v, v);
        b.add_edge("b", v, v);
        Arc::new(b.build().unwrap())
    }

    fn circle_aa(x: Arc<CubeComplex>) -> CubicalMap {
        let mut b = ComplexBuilder::new();
        let y0 = b.add_vertex("y0");
        let y1 = b.add_vertex("y1");
        b.add_edge("e0", y0, y1);
        b.add_edge("e1", y1, y0);
        let y = Arc::new(b.build().unwrap());
        CubicalMap::new(y, x, vec![vec![0, 0], vec![0, 0]]).unwrap()
    }

    #[test]
    fn a_squared_elevations_are_a_lines() {
        let x = wedge();
        let f = circle_aa(x.clone());
        let ball = develop_ball(x, 0, 4).unwrap();
        // every vertex of depth <= 1 lies on exactly one a-line
        let els = elevations(&f, 0, &ball, 1);
        // root and a^{+-1} share one line; b and b^-1 each give one
        assert_eq!(els.len(), 3);
        for e in &els {
            for w in e.image.vertices.windows(2) {
                assert_ne!(w[0], w[1]);
            }
        }
        let through_root = elevations_through(&f, 0, &ball, 0);
        assert_eq!(through_root.len(), 1);
        assert_eq!(through_root[0].image.len(), 9);
    }

    #[test]
    fn identity_relator_is_whole_ball() {
        let x = wedge();
        let id = CubicalMap::new(x.clone(), x.clone(), vec![vec![0], vec![0, 1]]).unwrap();
        let ball = develop_ball(x, 0, 3).unwrap();
        let els = elevations(&id, 0, &ball, 3);
        assert_eq!(els.len(), 1);
        assert_eq!(els[0].image.len(), ball.vertex_count());
    }
}
