#![allow(dead_code)]

use std::sync::Arc;

use cubsc_core::families::{salvetti, word_darts, SimpleGraph};
use cubsc_core::{ComplexBuilder, CubeComplex, CubicalMap, CubicalPresentation, Dart, Path, Relator};
use num_rational::Ratio;

pub fn alpha() -> Ratio<i64> {
    Ratio::new(1, 144)
}

pub fn torus() -> CubicalPresentation {
    let x = Arc::new(salvetti(&SimpleGraph::path(2)));
    CubicalPresentation::new(x, vec![], alpha(), true).unwrap()
}

pub fn three_torus() -> CubicalPresentation {
    let x = Arc::new(salvetti(&SimpleGraph::new(3, &[(0, 1), (1, 2), (0, 2)])));
    CubicalPresentation::new(x, vec![], alpha(), true).unwrap()
}

pub fn path(p: &CubicalPresentation, w: &str) -> Path {
    Path::new(0, word_darts(&p.base, w).unwrap())
}

pub fn fwd(x: &CubeComplex, name: &str) -> Dart {
    Dart::forward(x.lookup(name).unwrap().index)
}

pub fn rev(x: &CubeComplex, name: &str) -> Dart {
    fwd(x, name).inverse()
}

/// The annulus `a^n x [0, h]` mapped into the torus; it is locally convex.
/// Vertices `y{i}_{j}`, edges `a{i}_{j}` and `b{i}_{j}` (from row `j`),
/// squares `q{i}_{j}`.
pub fn cylinder(n: usize, h: usize) -> CubicalPresentation {
    let t = torus();
    let x = t.base.clone();
    let mut b = ComplexBuilder::new();
    let mut vid = vec![vec![0; h + 1]; n];
    for i in 0..n {
        for j in 0..=h {
            vid[i][j] = b.add_vertex(format!("y{i}_{j}"));
        }
    }
    let mut aid = vec![vec![0; h + 1]; n];
    let mut bid = vec![vec![0; h]; n];
    for i in 0..n {
        for j in 0..=h {
            aid[i][j] = b.add_edge(format!("a{i}_{j}"), vid[i][j], vid[(i + 1) % n][j]);
        }
        for j in 0..h {
            bid[i][j] = b.add_edge(format!("b{i}_{j}"), vid[i][j], vid[i][j + 1]);
        }
    }
    for i in 0..n {
        for j in 0..h {
            b.add_cube(
                format!("q{i}_{j}"),
                vec![bid[i][j], bid[(i + 1) % n][j], aid[i][j], aid[i][j + 1]],
            );
        }
    }
    let y = Arc::new(b.build().unwrap());
    let ea = x.lookup("a").unwrap().index;
    let eb = x.lookup("b").unwrap().index;
    let mut edges = vec![0; y.edge_count()];
    for (k, name) in y.names(1).iter().enumerate() {
        edges[k] = if name.starts_with('a') { ea } else { eb };
    }
    let assignment = vec![vec![0; y.vertex_count()], edges, vec![0; y.square_count()]];
    let map = CubicalMap::new(y, x.clone(), assignment).unwrap();
    CubicalPresentation::new(x, vec![Relator { name: "cyl".into(), map }], alpha(), true).unwrap()
}
