use cubsc_diagram::ladder::{is_ladder, is_padded_ladder, Rung};
use cubsc_diagram::samples::{grid, ladder};

#[test]
fn single_cone_cell_is_a_ladder() {
    let (_, d) = ladder(3, 1, &[0]);
    let l = is_ladder(&d).expect("a cone-cell is a ladder");
    assert_eq!(l.cone_count(), 1);
    assert_eq!(l.n(), 1);
    assert!(l.vertically_degenerate(0) && l.vertically_degenerate(1));
    assert_eq!(l.conditions(&d), [true; 7]);
}

#[test]
fn grids_are_padded_ladders_without_cones() {
    for (n, m) in [(1, 1), (2, 3), (4, 2)] {
        let (_, d) = grid(n, m);
        let l = is_padded_ladder(&d).expect("grid decomposes");
        assert_eq!(l.n(), 0);
        assert_eq!(l.regions[0].len(), n * m);
        assert!(l.holds(&d));
    }
}

#[test]
fn cone_grid_cone_chain() {
    let (_, d) = ladder(3, 3, &[0, 2]);
    let l = is_padded_ladder(&d).expect("chain decomposes");
    assert_eq!(l.cone_count(), 2);
    assert_eq!(l.conditions(&d), [true; 7]);
    let squares: usize = l.regions.iter().map(|r| r.len()).sum();
    assert_eq!(squares, 3);
    // the middle region is the square row between the cone-cells
    let cones: Vec<usize> = l
        .rungs
        .iter()
        .filter_map(|r| match r {
            Rung::Cone(f) => Some(*f),
            Rung::Vertex(_) => None,
        })
        .collect();
    assert_eq!(cones.len(), 2);
    assert!(is_ladder(&d).is_some());
}

#[test]
fn longer_chains() {
    for rows in [vec![0, 2, 4], vec![1, 3], vec![0, 1]] {
        let (_, d) = ladder(2, 5, &rows);
        let l = is_padded_ladder(&d).unwrap_or_else(|| panic!("rows {rows:?}"));
        assert_eq!(l.cone_count(), rows.len());
        assert!(l.holds(&d));
    }
}

#[test]
fn conditions_fail_independently() {
    let (_, d) = ladder(3, 3, &[0, 2]);
    let good = is_padded_ladder(&d).unwrap();

    // shift the start: only the boundary rotation breaks
    let mut l = good.clone();
    l.start = (l.start + 1) % d.boundary.len();
    let c = l.conditions(&d);
    assert!(!c[0]);
    assert!(c[1..].iter().all(|&b| b), "{c:?}");

    // lose a region face: the partition breaks, squares-only still holds
    let mut l = good.clone();
    let i = l.regions.iter().position(|r| !r.is_empty()).unwrap();
    l.regions[i].pop();
    let c = l.conditions(&d);
    assert!(c[0] && c[1] && c[2] && !c[3] && c[4], "{c:?}");

    // put a cone-cell into a region
    let mut l = good.clone();
    if let Rung::Cone(f) = l.rungs[0] {
        l.regions[0].push(f);
    }
    let c = l.conditions(&d);
    assert!(!c[4], "{c:?}");
    assert!(c[0] && c[1] && c[2]);

    // corrupt a factorization
    let mut l = good;
    let i = l.rho.iter().position(|r| !r.is_empty()).unwrap_or(0);
    let moved = l.rho[i].pop();
    if let Some(x) = moved {
        l.varrho[i].push(x);
    }
    let c = l.conditions(&d);
    assert!(!c[1], "{c:?}");
    assert!(c[0]);
}

#[test]
fn grid_without_vertical_padding_needs_vertex_rungs() {
    let (_, d) = grid(2, 2);
    let l = is_ladder(&d).expect("a grid is a ladder between two vertices");
    assert!(l.rungs.iter().all(|r| matches!(r, Rung::Vertex(_))));
    assert!(l.holds(&d));
}

fn tree(arms: usize) -> cubsc_diagram::DiscDiagram {
    use cubsc_core::Dart;
    use cubsc_diagram::DiagramBuilder;
    let mut b = DiagramBuilder::new();
    let c = b.vertex(0);
    let mut boundary = Vec::new();
    for _ in 0..arms {
        let v = b.vertex(0);
        let e = b.edge(c, v, 0);
        boundary.push(Dart::forward(e));
        boundary.push(Dart::new(e, true));
    }
    b.build_unchecked(boundary, c)
}

#[test]
fn path_trees_are_ladders_tripods_are_not() {
    assert!(is_ladder(&tree(1)).is_some());
    assert!(is_ladder(&tree(2)).is_some());
    assert!(is_padded_ladder(&tree(3)).is_none());
}
