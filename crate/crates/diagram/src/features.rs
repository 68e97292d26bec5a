//! Boundary features of positive curvature: spurs, shells and generalized
//! corners.

use cubsc_core::Dart;
use serde::Serialize;

use crate::diagram::{DiscDiagram, Owner};
use crate::rectify::{curvature, rectify, Angle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeatureKind {
    Spur,
    Shell,
    GeneralizedCorner,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Feature {
    pub kind: FeatureKind,
    /// Boundary positions covered by the feature, in boundary order.
    pub positions: Vec<usize>,
    /// The spur vertex.
    pub vertex: Option<usize>,
    /// The cone-cell of a shell or the square of a generalized corner.
    pub face: Option<usize>,
    /// Outer path `Q` of a shell, or the two boundary darts of a spur or
    /// corner.
    pub outer: Vec<Dart>,
    /// Inner path `S` of a shell, from the end of `Q` back to its start.
    pub inner: Vec<Dart>,
    /// Vertex curvature of a spur, face curvature of a shell.
    pub curvature: Option<Angle>,
}

/// Spurs, shells of positive curvature whose boundary meets `∂D` in one arc,
/// and generalized corners along the boundary.
pub fn detect_features(d: &DiscDiagram) -> Vec<Feature> {
    let owners = d.owners();
    let rect = rectify(d);
    let k = curvature(&rect);
    let n = d.boundary.len();
    let mut out = Vec::new();

    for i in 0..n {
        let j = (i + 1) % n;
        if n >= 2 && d.boundary[j] == d.boundary[i].inverse() {
            let v = d.head(d.boundary[i]);
            out.push(Feature {
                kind: FeatureKind::Spur,
                positions: vec![i, j],
                vertex: Some(v),
                face: None,
                outer: vec![d.boundary[i], d.boundary[j]],
                inner: Vec::new(),
                curvature: k.vertices.get(&v).copied(),
            });
        }
    }

    for (ci, cell) in rect.cells.iter().enumerate() {
        if cell.kind != crate::rectify::RKind::Cone || k.faces[ci] <= Angle::from_integer(0) {
            continue;
        }
        let f = cell.faces[0];
        let darts = &d.faces[f].darts;
        let m = darts.len();
        let on: Vec<bool> = darts.iter().map(|&x| d.on_boundary(&owners, x)).collect();
        let starts: Vec<usize> = (0..m).filter(|&i| on[i] && !on[(i + m - 1) % m]).collect();
        let (first, len) = if on.iter().all(|&b| b) {
            (0, m)
        } else if starts.len() == 1 {
            let s = starts[0];
            let len = (0..m).take_while(|&t| on[(s + t) % m]).count();
            (s, len)
        } else {
            continue;
        };
        let outer: Vec<Dart> = (0..len).map(|t| darts[(first + t) % m]).collect();
        let inner: Vec<Dart> = (len..m).map(|t| darts[(first + t) % m]).collect();
        // the arc of Q must also be consecutive along the boundary
        let positions: Vec<usize> = outer
            .iter()
            .map(|x| match owners.get(&x.inverse()) {
                Some(Owner::Outer { pos }) => *pos,
                _ => unreachable!(),
            })
            .collect();
        if positions.windows(2).any(|w| (w[0] + 1) % n != w[1]) {
            continue;
        }
        out.push(Feature {
            kind: FeatureKind::Shell,
            positions,
            vertex: None,
            face: Some(f),
            outer,
            inner,
            curvature: Some(k.faces[ci]),
        });
    }

    let curves = d.dual_curves();
    let boundary_end = |x: Dart| match owners.get(&x) {
        Some(Owner::Outer { pos }) => Some(*pos),
        _ => None,
    };
    let mut corners = Vec::new();
    for (a, ca) in curves.iter().enumerate() {
        let Some((a0, a1)) = ca.ends else { continue };
        for cb in curves.iter().skip(a + 1) {
            let Some((b0, b1)) = cb.ends else { continue };
            for &(fa, pa) in &ca.squares {
                if !cb.squares.iter().any(|&(fb, pb)| fb == fa && pb != pa) {
                    continue;
                }
                for ea in [a0, a1].into_iter().filter_map(boundary_end) {
                    for eb in [b0, b1].into_iter().filter_map(boundary_end) {
                        let pair = if (ea + 1) % n == eb {
                            Some((ea, eb))
                        } else if (eb + 1) % n == ea {
                            Some((eb, ea))
                        } else {
                            None
                        };
                        if let Some((p, q)) = pair {
                            corners.push((p, q, fa));
                        }
                    }
                }
            }
        }
    }
    corners.sort_unstable();
    corners.dedup();
    for (p, q, f) in corners {
        out.push(Feature {
            kind: FeatureKind::GeneralizedCorner,
            positions: vec![p, q],
            vertex: None,
            face: Some(f),
            outer: vec![d.boundary[p], d.boundary[q]],
            inner: Vec::new(),
            curvature: None,
        });
    }
    out
}
