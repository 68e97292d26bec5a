use cubsc_core::Dart;
use cubsc_diagram::features::{detect_features, FeatureKind};
use cubsc_diagram::samples::{grid, ladder, torus};
use cubsc_diagram::{Cell, DiagramBuilder};
use num_rational::Ratio;

fn count(fs: &[cubsc_diagram::features::Feature], k: FeatureKind) -> usize {
    fs.iter().filter(|f| f.kind == k).count()
}

#[test]
fn hanging_edge_is_one_spur() {
    let p = torus();
    let a = p.base.lookup("a").unwrap().index;
    let bb = p.base.lookup("b").unwrap().index;
    let mut b = DiagramBuilder::new();
    let v: Vec<usize> = (0..5).map(|_| b.vertex(0)).collect();
    let a0 = b.edge(v[0], v[1], a);
    let b1 = b.edge(v[1], v[2], bb);
    let a1 = b.edge(v[3], v[2], a);
    let b0 = b.edge(v[0], v[3], bb);
    let e = b.edge(v[0], v[4], a);
    let f = Dart::forward;
    let r = |x| Dart::new(x, true);
    b.face(Cell::Square { image: 0 }, vec![f(a0), f(b1), r(a1), r(b0)]);
    let d = b.build(vec![f(a0), f(b1), r(a1), r(b0), f(e), r(e)], v[0], &p).unwrap();
    let fs = detect_features(&d);
    assert_eq!(count(&fs, FeatureKind::Spur), 1);
    let spur = fs.iter().find(|x| x.kind == FeatureKind::Spur).unwrap();
    assert_eq!(spur.vertex, Some(v[4]));
    assert_eq!(spur.positions, vec![4, 5]);
    assert_eq!(spur.curvature, Some(Ratio::from_integer(1)));
    // the square keeps the three corners away from the edge
    assert_eq!(count(&fs, FeatureKind::GeneralizedCorner), 3);
}

#[test]
fn single_cone_cell_is_a_shell_with_empty_inner_path() {
    let (_, d) = ladder(3, 1, &[0]);
    let fs = detect_features(&d);
    assert_eq!(fs.len(), 1);
    let s = &fs[0];
    assert_eq!(s.kind, FeatureKind::Shell);
    assert!(s.inner.is_empty());
    assert_eq!(s.outer.len(), 8);
    assert_eq!(s.curvature, Some(Ratio::from_integer(2)));
}

#[test]
fn unit_square_has_four_corners() {
    let (_, d) = grid(1, 1);
    let fs = detect_features(&d);
    assert_eq!(count(&fs, FeatureKind::GeneralizedCorner), 4);
    assert_eq!(fs.len(), 4);
    let mut pairs: Vec<Vec<usize>> = fs.iter().map(|f| f.positions.clone()).collect();
    pairs.sort();
    assert_eq!(pairs, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]);
}

#[test]
fn larger_grids_have_four_corners() {
    for (n, m) in [(2, 2), (3, 1), (3, 4)] {
        let (_, d) = grid(n, m);
        assert_eq!(count(&detect_features(&d), FeatureKind::GeneralizedCorner), 4, "{n}x{m}");
    }
}

#[test]
fn shells_have_short_inner_paths() {
    for (w, h, rows) in [(3, 3, vec![0, 2]), (4, 3, vec![0]), (2, 5, vec![0, 4]), (5, 1, vec![0])] {
        let (_, d) = ladder(w, h, &rows);
        let shells: Vec<_> = detect_features(&d).into_iter().filter(|f| f.kind == FeatureKind::Shell).collect();
        assert!(!shells.is_empty());
        for s in shells {
            assert!(s.inner.len() < s.outer.len(), "{w}x{h} {rows:?}");
            assert!(s.curvature.unwrap() > Ratio::from_integer(0));
        }
    }
}

#[test]
fn subdiagram_of_a_grid() {
    let (_, d) = grid(3, 3);
    let centre = d.faces[4].darts.clone();
    let s = d.subdiagram(&centre).unwrap();
    assert_eq!(s.faces.len(), 1);
    assert_eq!(s.boundary.len(), 4);

    let whole = d.subdiagram(&d.boundary).unwrap();
    assert_eq!(whole.faces.len(), 9);
    assert_eq!(whole.canonical_form(), d.canonical_form());

    assert!(d.subdiagram(&centre[..3]).is_none());
    assert!(d.subdiagram(&[]).is_none());
    // the reverse of a face boundary does not bound inside the diagram
    let back: Vec<Dart> = d.boundary.iter().rev().map(|x| x.inverse()).collect();
    assert!(d.subdiagram(&back).is_none());
}
