mod common;

use common::*;
use cubsc_coneoff::{build_cone_off, four_point_delta, ConeKind, ConeOffGraph};
use cubsc_core::families::{classical_presentation, CLASSICAL_300};
use proptest::prelude::*;

fn complete(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).filter(|&j| j != i).collect()).collect()
}

fn cycle(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect()
}

#[test]
fn trees_and_complete_graphs_are_zero() {
    let b = ball(&free2(), 3);
    let h = build_cone_off(&b, false);
    let r = four_point_delta(&h, 10_000, 0);
    assert!(r.exhaustive);
    assert_eq!(r.twice_delta, 0);
    let k = ConeOffGraph::from_graph(complete(6), vec![]);
    assert_eq!(four_point_delta(&k, 100, 0).twice_delta, 0);
}

#[test]
fn cycles_match_brute_force() {
    for n in 4..12 {
        let c = ConeOffGraph::from_graph(cycle(n), vec![]);
        let r = four_point_delta(&c, 100, 0);
        assert_eq!(r.twice_delta, oracle_twice_delta(&cycle(n)), "C{n}");
        assert_eq!(r.quadruples as usize, n * (n - 1) * (n - 2) * (n - 3) / 24);
    }
    // a single cone over a cycle collapses it
    let c = ConeOffGraph::from_graph(cycle(10), vec![(ConeKind::Carrier { hyperplane: 0 }, (0..10).collect())]);
    assert_eq!(four_point_delta(&c, 100, 0).twice_delta, oracle_twice_delta(c.adjacency()));
}

#[test]
fn grid_cone_off_is_stable() {
    let mut seen = Vec::new();
    for r in [4, 6, 8] {
        let b = ball(&torus(), r);
        let h = build_cone_off(&b, true);
        let rep = four_point_delta(&h, 1000, 0);
        assert!(rep.exhaustive);
        if r == 4 {
            assert_eq!(rep.twice_delta, oracle_twice_delta(h.adjacency()));
        }
        seen.push(rep.twice_delta);
    }
    assert_eq!(seen, vec![4, 4, 4]);
}

#[test]
fn sampling_is_deterministic() {
    let p = classical_presentation(2, &[CLASSICAL_300]).unwrap();
    let b = ball(&p, 4);
    let h = build_cone_off(&b, true);
    let a = four_point_delta(&h, 40, 7);
    let c = four_point_delta(&h, 40, 7);
    assert!(!a.exhaustive);
    assert_eq!(a, c);
    assert_eq!(a.vertices, 40);
    let w = a.witness.unwrap();
    let d = |x: usize, y: usize| h.distance(x, y);
    let mut s = [d(w[0], w[1]) + d(w[2], w[3]), d(w[0], w[2]) + d(w[1], w[3]), d(w[0], w[3]) + d(w[1], w[2])];
    s.sort_unstable();
    assert_eq!(s[2] - s[1], a.twice_delta);
    assert!(a.to_csv().starts_with("vertices,exhaustive"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_graphs_match_brute_force(n in 4usize..10, edges in prop::collection::vec((0usize..10, 0usize..10), 0..30)) {
        // a path keeps the graph connected
        let mut adj: Vec<Vec<usize>> = (0..n).map(|i| {
            let mut v = Vec::new();
            if i > 0 { v.push(i - 1); }
            if i + 1 < n { v.push(i + 1); }
            v
        }).collect();
        for (a, b) in edges {
            let (a, b) = (a % n, b % n);
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let g = ConeOffGraph::from_graph(adj.clone(), vec![]);
        prop_assert_eq!(four_point_delta(&g, 100, 0).twice_delta, oracle_twice_delta(&adj));
    }
}
