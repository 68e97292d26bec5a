use std::collections::BTreeMap;

use cubsc_core::complex::replay_violation;
use cubsc_core::families::{salvetti, wedge, SimpleGraph};
use cubsc_core::json::{complex_to_string, parse_complex};
use cubsc_core::{ComplexBuilder, CubeRef};
use proptest::prelude::*;

/// Faces of `[0,1]^n` as strings over `{0,1,*}`; the `k`-th free coordinate
/// is axis `k`.
fn cube_lattice(n: usize) -> Vec<Vec<String>> {
    let mut by_dim = vec![Vec::new(); n + 1];
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let s: String = (0..n)
            .map(|_| {
                let t = c % 3;
                c /= 3;
                ['0', '1', '*'][t]
            })
            .collect();
        by_dim[s.matches('*').count()].push(s);
    }
    by_dim
}

fn lattice_faces(s: &str) -> Vec<String> {
    let free: Vec<usize> = s.char_indices().filter(|(_, c)| *c == '*').map(|(i, _)| i).collect();
    let mut out = Vec::new();
    for &i in &free {
        for side in ['0', '1'] {
            let mut t: Vec<char> = s.chars().collect();
            t[i] = side;
            out.push(t.into_iter().collect());
        }
    }
    out
}

#[test]
fn three_cube_face_lattice() {
    let lattice = cube_lattice(3);
    assert_eq!(lattice.iter().map(|l| l.len()).collect::<Vec<_>>(), vec![8, 12, 6, 1]);
    let mut b = ComplexBuilder::new();
    let mut ids: BTreeMap<String, usize> = BTreeMap::new();
    for v in &lattice[0] {
        ids.insert(v.clone(), b.add_vertex(v.clone()));
    }
    for (d, level) in lattice.iter().enumerate().skip(1) {
        for c in level {
            let faces: Vec<usize> = lattice_faces(c).iter().map(|f| ids[f]).collect();
            let id = if d == 1 {
                b.add_edge(c.clone(), faces[0], faces[1])
            } else {
                b.add_cube(c.clone(), faces)
            };
            ids.insert(c.clone(), id);
        }
    }
    let x = b.build().unwrap();
    assert_eq!(x.dim(), 3);
    assert_eq!((x.count(0), x.count(1), x.count(2), x.count(3)), (8, 12, 6, 1));
    for d in 1..=3 {
        for i in 0..x.count(d) {
            assert_eq!(x.faces(CubeRef { dim: d, index: i }).len(), 2 * d);
        }
    }
    let mut vs = x.cube_vertices(CubeRef { dim: 3, index: 0 });
    vs.sort_unstable();
    vs.dedup();
    assert_eq!(vs.len(), 8);
    assert!(x.check_npc().npc);
    let text = complex_to_string(&x);
    assert_eq!(complex_to_string(&parse_complex(&text).unwrap()), text);
}

#[test]
fn salvetti_links_are_flag() {
    for g in [SimpleGraph::path(3), SimpleGraph::path(4), SimpleGraph::new(3, &[(0, 1), (1, 2), (0, 2)])] {
        let x = salvetti(&g);
        let report = x.check_npc();
        assert!(report.npc, "{:?}", report.violation);
    }
}

#[test]
fn hollow_three_torus_is_reported_with_replayable_violation() {
    let mut b = ComplexBuilder::new();
    let v = b.add_vertex("v");
    let a = b.add_edge("a", v, v);
    let bb = b.add_edge("b", v, v);
    let c = b.add_edge("c", v, v);
    b.add_cube("ab", vec![bb, bb, a, a]);
    b.add_cube("ac", vec![c, c, a, a]);
    b.add_cube("bc", vec![c, c, bb, bb]);
    let x = b.build().unwrap();
    let report = x.check_npc();
    assert!(!report.npc);
    let violation = report.violation.unwrap();
    assert!(replay_violation(&x, &violation));
}

fn graph_strategy() -> impl Strategy<Value = SimpleGraph> {
    (1usize..5).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let k = pairs.len();
        prop::collection::vec(any::<bool>(), k).prop_map(move |mask| {
            let e: Vec<(usize, usize)> = pairs.iter().zip(&mask).filter(|(_, m)| **m).map(|(p, _)| *p).collect();
            SimpleGraph::new(n, &e)
        })
    })
}

proptest! {
    #[test]
    fn salvetti_cube_counts_match_cliques(g in graph_strategy()) {
        let x = salvetti(&g);
        let cliques = g.cliques();
        for d in 1..=x.dim() {
            prop_assert_eq!(x.count(d), cliques.iter().filter(|c| c.len() == d).count());
        }
        prop_assert!(x.check_npc().npc);
    }

    #[test]
    fn subdivision_counts_and_curvature(g in graph_strategy()) {
        let x = salvetti(&g);
        let y = x.subdivide();
        prop_assert_eq!(y.dim(), x.dim());
        // a d'-cube contributes binom(d', d) 2^d cubes of dimension d
        for d in 0..=x.dim() {
            let want: usize = (d..=x.dim()).map(|e| x.count(e) * binom(e, d) << d).sum();
            prop_assert_eq!(y.count(d), want);
        }
        let euler = |c: &cubsc_core::CubeComplex| (0..=c.dim()).map(|d| if d % 2 == 0 { c.count(d) as i64 } else { -(c.count(d) as i64) }).sum::<i64>();
        prop_assert_eq!(euler(&y), euler(&x));
        prop_assert!(y.check_npc().npc);
    }

    #[test]
    fn json_round_trip_is_byte_identical(g in graph_strategy()) {
        let x = salvetti(&g);
        let text = complex_to_string(&x);
        let y = parse_complex(&text).unwrap();
        prop_assert_eq!(complex_to_string(&y), text);
        prop_assert_eq!(y.names(1), x.names(1));
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
}

#[test]
fn subdivided_torus_doubles_distances() {
    use cubsc_core::develop_ball;
    use std::sync::Arc;
    let t = salvetti(&SimpleGraph::path(2)).subdivide();
    assert_eq!((t.vertex_count(), t.edge_count(), t.square_count()), (4, 8, 4));
    let labels: Vec<&str> = (0..t.edge_count()).map(|e| t.edge_label(e)).collect();
    assert_eq!(labels.iter().filter(|l| **l == "a").count(), 2);
    let root = (0..t.vertex_count()).find(|&v| t.out_darts(v).len() == 4 && !t.vertex_name(v).contains('/')).unwrap();
    let ball = develop_ball(Arc::new(t), root, 4).unwrap();
    // in the half-unit grid the old vertices at depth 2 are (+-2, 0), (0, +-2)
    let at = |k| (0..ball.vertex_count()).filter(|&v| ball.depth(v) == k).collect::<Vec<_>>();
    assert_eq!(at(2).len(), 8);
    assert_eq!(at(2).iter().filter(|&&v| ball.project_vertex(v) == root).count(), 4);
    assert_eq!(at(1).iter().filter(|&&v| ball.project_vertex(v) == root).count(), 0);
}

#[test]
fn wedge_is_one_dimensional() {
    let w = wedge(3);
    assert_eq!((w.vertex_count(), w.edge_count(), w.dim()), (1, 3, 1));
    assert!(w.check_npc().npc);
}

#[test]
fn presentation_documents_round_trip() {
    use cubsc_core::families::{artin_presentation, classical_presentation, ArtinSpec, AxisBudget};
    use cubsc_core::CubicalPresentation;
    let (artin, _) = artin_presentation(&ArtinSpec::two_generator(Some(5)), AxisBudget::default()).unwrap();
    for p in [classical_presentation(2, &["aabbAB", "abAB"]).unwrap(), artin] {
        let doc = p.to_document();
        let q = CubicalPresentation::parse(&doc).unwrap();
        assert_eq!(q.to_document(), doc);
        assert_eq!(q.relators.len(), p.relators.len());
        assert_eq!(q.alpha, p.alpha);
        for (a, b) in p.relators.iter().zip(&q.relators) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.complex().vertex_count(), b.complex().vertex_count());
            for e in 0..a.complex().edge_count() {
                assert_eq!(a.map.edge(e), b.map.edge(e));
            }
        }
    }
}
