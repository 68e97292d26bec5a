//! Small presentations and diagrams used by tests, reports and examples.

use std::sync::Arc;

use cubsc_core::families::{salvetti, SimpleGraph};
use cubsc_core::{ComplexBuilder, CubicalMap, CubicalPresentation, Dart, Relator};
use num_rational::Ratio;

use crate::diagram::{Cell, DiagramBuilder, DiscDiagram};

pub fn torus() -> CubicalPresentation {
    let x = Arc::new(salvetti(&SimpleGraph::path(2)));
    CubicalPresentation::new(x, vec![], Ratio::new(1, 144), true).expect("torus is a presentation")
}

/// The torus with one relator: the annulus `a^n x [0, h]`, which is locally
/// convex. Its cubes are named `y{i}_{j}`, `a{i}_{j}`, `b{i}_{j}`, `q{i}_{j}`
/// with `i` taken mod `n`.
pub fn cylinder(n: usize, h: usize) -> CubicalPresentation {
    let t = torus();
    let x = t.base.clone();
    let mut b = ComplexBuilder::new();
    let mut vid = vec![vec![0; h + 1]; n];
    for (i, row) in vid.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = b.add_vertex(format!("y{i}_{j}"));
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
    let y = Arc::new(b.build().expect("annulus is a cube complex"));
    let ea = x.lookup("a").expect("edge a").index;
    let eb = x.lookup("b").expect("edge b").index;
    let edges = y.names(1).iter().map(|s| if s.starts_with('a') { ea } else { eb }).collect();
    let assignment = vec![vec![0; y.vertex_count()], edges, vec![0; y.square_count()]];
    let map = CubicalMap::new(y, x.clone(), assignment).expect("annulus maps to the torus");
    CubicalPresentation::new(x, vec![Relator { name: "annulus".into(), map }], Ratio::new(1, 144), true)
        .expect("annulus is locally convex")
}

/// A `w x h` block of the plane in which the rows listed in `cone_rows` are
/// single cone-cells over `cylinder(w, 1)` and the other unit cells are
/// squares. With no cone rows this is the `w x h` grid over the torus.
pub fn ladder(w: usize, h: usize, cone_rows: &[usize]) -> (CubicalPresentation, DiscDiagram) {
    let p = cylinder(w.max(1), 1);
    let x = &p.base;
    let y = p.relators[0].complex();
    let ea = x.lookup("a").expect("edge a").index;
    let eb = x.lookup("b").expect("edge b").index;
    let mut b = DiagramBuilder::new();
    let mut v = vec![vec![0; h + 1]; w + 1];
    for col in v.iter_mut() {
        for cell in col.iter_mut() {
            *cell = b.vertex(0);
        }
    }
    let mut ha = vec![vec![0; h + 1]; w];
    // interior rungs of a cone row do not exist
    let mut vb = vec![vec![usize::MAX; h]; w + 1];
    for j in 0..=h {
        for i in 0..w {
            ha[i][j] = b.edge(v[i][j], v[i + 1][j], ea);
        }
    }
    for j in 0..h {
        for i in 0..=w {
            if i == 0 || i == w || !cone_rows.contains(&j) {
                vb[i][j] = b.edge(v[i][j], v[i][j + 1], eb);
            }
        }
    }
    let f = Dart::forward;
    let r = |e| Dart::new(e, true);
    let yf = |name: String| Dart::forward(y.lookup(&name).expect("annulus edge").index);
    for j in 0..h {
        if cone_rows.contains(&j) {
            let mut darts: Vec<Dart> = (0..w).map(|i| f(ha[i][j])).collect();
            darts.push(f(vb[w][j]));
            darts.extend((0..w).rev().map(|i| r(ha[i][j + 1])));
            darts.push(r(vb[0][j]));
            let mut word: Vec<Dart> = (0..w).map(|i| yf(format!("a{i}_0"))).collect();
            word.push(yf(format!("b{}_0", w % w.max(1))));
            word.extend((0..w).rev().map(|i| yf(format!("a{i}_1")).inverse()));
            word.push(yf("b0_0".into()).inverse());
            let start = y.lookup("y0_0").expect("annulus vertex").index;
            b.face(Cell::Cone { relator: 0, start, word }, darts);
        } else {
            for i in 0..w {
                b.face(
                    Cell::Square { image: 0 },
                    vec![f(ha[i][j]), f(vb[i + 1][j]), r(ha[i][j + 1]), r(vb[i][j])],
                );
            }
        }
    }
    let mut boundary: Vec<Dart> = (0..w).map(|i| f(ha[i][0])).collect();
    boundary.extend((0..h).map(|j| f(vb[w][j])));
    boundary.extend((0..w).rev().map(|i| r(ha[i][h])));
    boundary.extend((0..h).rev().map(|j| r(vb[0][j])));
    let d = b.build(boundary, v[0][0], &p).expect("ladder is a disc diagram");
    (p, d)
}

/// The `n x m` grid over the torus.
pub fn grid(n: usize, m: usize) -> (CubicalPresentation, DiscDiagram) {
    let (_, d) = ladder(n, m, &[]);
    (torus(), d)
}
