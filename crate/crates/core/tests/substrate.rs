mod common;

use std::sync::Arc;

use common::*;
use cubsc_core::geometry::GeomError;
use cubsc_core::{develop_ball, Geometry, Path, Subcomplex};
use proptest::prelude::*;

#[test]
fn torus_ball_matches_lattice_count() {
    for r in 0..=4usize {
        let ball = develop_ball(torus(), 0, r).unwrap();
        let ri = r as i64;
        let lattice = (-ri..=ri)
            .flat_map(|i| (-ri..=ri).map(move |j| (i, j)))
            .filter(|(i, j)| i.abs() + j.abs() <= ri)
            .count();
        assert_eq!(ball.vertex_count(), lattice);
    }
}

#[test]
fn wedge_ball_matches_tree_count() {
    for r in 0..=5usize {
        let ball = develop_ball(wedge2(), 0, r).unwrap();
        let expected: usize = 1 + (1..=r).map(|k| 4 * 3usize.pow(k as u32 - 1)).sum::<usize>();
        assert_eq!(ball.vertex_count(), expected);
        assert_eq!(ball.complex().square_count(), 0);
    }
}

#[test]
fn hyperplane_examples() {
    // torus radius 2: grid lines x = k + 1/2 and y = k + 1/2 meeting the diamond
    let ball = develop_ball(torus(), 0, 2).unwrap();
    let h = ball.hyperplanes();
    let x = ball.complex();
    let mut vertical = std::collections::BTreeSet::new();
    let mut horizontal = std::collections::BTreeSet::new();
    for e in 0..x.edge_count() {
        let (p, q) = (coords(&ball, x.source(e)), coords(&ball, x.target(e)));
        if p.1 == q.1 {
            vertical.insert(2 * p.0.min(q.0) + 1);
        } else {
            horizontal.insert(2 * p.1.min(q.1) + 1);
        }
    }
    assert_eq!(h.len(), vertical.len() + horizontal.len());
    for k in 0..h.len() {
        let es = h.edges(k);
        let kinds: std::collections::BTreeSet<bool> = es
            .iter()
            .map(|&e| coords(&ball, x.source(e)).1 == coords(&ball, x.target(e)).1)
            .collect();
        assert_eq!(kinds.len(), 1);
    }

    let tree = develop_ball(wedge2(), 0, 3).unwrap();
    assert_eq!(tree.hyperplanes().len(), tree.complex().edge_count());

    let one = develop_ball(torus(), 0, 1).unwrap();
    // a single square needs radius 2; at radius 1 there are no squares
    assert_eq!(one.complex().square_count(), 0);
    let two = develop_ball(torus(), 0, 2).unwrap();
    let hs = two.hyperplanes();
    let x = two.complex();
    let f = x.faces(cubsc_core::CubeRef { dim: 2, index: 0 });
    let (a, b) = (hs.of_edge(f[0]), hs.of_edge(f[2]));
    assert_ne!(a, b);
    assert!(hs.cross(a, b));
}

#[test]
fn carriers_are_convex() {
    let g = geometry(raag_path3(), 6);
    let x = g.complex();
    for h in 0..g.hyperplanes().len() {
        let carrier = g.hyperplanes().carrier(x, h);
        if carrier.iter().all(|&v| g.is_interior(v)) {
            let hull = g.convex_hull(&carrier).unwrap();
            assert_eq!(hull.vertices, carrier);
        }
    }
}

#[test]
fn tree_distances_and_medians_exhaustive() {
    let g = geometry(wedge2(), 6);
    let ball = g.ball().clone();
    let pts: Vec<usize> = (0..ball.vertex_count()).filter(|&v| ball.depth(v) <= 2).collect();
    let words: Vec<_> = pts.iter().map(|&v| free_word(&ball, v)).collect();
    for (i, &x) in pts.iter().enumerate() {
        for (j, &y) in pts.iter().enumerate() {
            assert_eq!(g.distance(x, y), tree_distance(&words[i], &words[j]));
            assert_eq!(g.separating_count(x, y), g.distance(x, y));
        }
    }
    // leaves of depth 2 in distinct branches meet at the root
    let l1 = ball.vertex_by_name("a.a").unwrap();
    let l2 = ball.vertex_by_name("b^-1.a").unwrap();
    let l3 = ball.vertex_by_name("a^-1.b").unwrap();
    assert_eq!(g.geodesic(l1, l2).unwrap().len(), 4);
    assert_eq!(brute_medians(&g, l1, l2, l3), vec![0]);
    assert_eq!(g.median(l1, l2, l3).unwrap(), 0);
}

#[test]
fn grid_hull_matches_interval_closure() {
    let g = geometry(torus(), 8);
    let b = g.ball().clone();
    let s = [grid(&b, 0, 0), grid(&b, 2, 1)];
    let hull = g.convex_hull(&s).unwrap();
    assert_eq!(hull.vertices, interval_closure(&g, &s));
    assert_eq!(hull.len(), 6);
}

#[test]
fn frontier_queries_are_refused() {
    let g = geometry(torus(), 3);
    let b = g.ball().clone();
    let edge = grid(&b, 2, 0);
    assert!(matches!(g.median(0, edge, 0), Err(GeomError::OutOfBall(_))));
    assert!(matches!(g.gate(&Subcomplex::new(vec![0]), edge), Err(GeomError::OutOfBall(_))));
}

#[test]
fn elevation_images_are_gate_closed() {
    use cubsc_core::elevation::elevations;
    use cubsc_core::families::classical_presentation;
    let p = classical_presentation(2, &["abAB"]).unwrap();
    let ball = Arc::new(develop_ball(p.base.clone(), 0, 6).unwrap());
    let g = Geometry::new(ball.clone());
    for e in elevations(&p.relators[0].map, 0, &ball, 1) {
        for x in 0..ball.vertex_count() {
            if g.is_interior(x) {
                if let Ok(gx) = g.gate(&e.image, x) {
                    assert!(e.contains(gx));
                    for &c in &e.image.vertices {
                        assert_eq!(g.distance(x, c), g.distance(x, gx) + g.distance(gx, c));
                    }
                }
            }
        }
    }
}

fn interior(g: &Geometry, depth: usize) -> Vec<usize> {
    (0..g.ball().vertex_count()).filter(|&v| g.ball().depth(v) <= depth).collect()
}

struct Fixture {
    geo: Geometry,
    pts: Vec<usize>,
}

fn fixtures() -> &'static [Fixture] {
    use std::sync::OnceLock;
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        [(torus(), 7usize), (wedge2(), 7), (raag_path3(), 7)]
            .into_iter()
            .map(|(x, r)| {
                let geo = geometry(x, r);
                let pts = interior(&geo, 3);
                Fixture { geo, pts }
            })
            .collect()
    })
}

fn pick(f: &Fixture, i: usize) -> usize {
    f.pts[i % f.pts.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distance_counts_separating_hyperplanes(k in 0usize..3, i in any::<usize>(), j in any::<usize>()) {
        let f = &fixtures()[k];
        let (x, y) = (pick(f, i), pick(f, j));
        prop_assert_eq!(f.geo.distance(x, y), f.geo.separating_count(x, y));
        let p = f.geo.geodesic(x, y).unwrap();
        prop_assert_eq!(p.len(), f.geo.distance(x, y));
        prop_assert!(f.geo.crosses_each_hyperplane_once(&p));
    }

    #[test]
    fn median_axioms(k in 0usize..3, i in any::<usize>(), j in any::<usize>(), l in any::<usize>()) {
        let f = &fixtures()[k];
        let (x, y, z) = (pick(f, i), pick(f, j), pick(f, l));
        let m = f.geo.median(x, y, z).unwrap();
        prop_assert_eq!(brute_medians(&f.geo, x, y, z), vec![m]);
        for (a, b, c) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
            prop_assert_eq!(f.geo.median(a, b, c).unwrap(), m);
        }
        prop_assert_eq!(f.geo.median(x, x, y).unwrap(), x);
        prop_assert_eq!(f.geo.median_by_signature(x, y, z), Some(m));
    }

    #[test]
    fn hull_is_a_closure_operator(k in 0usize..3, raw in prop::collection::vec(any::<usize>(), 1..4), extra in any::<usize>()) {
        let f = &fixtures()[k];
        // keep the hull well inside the ball
        let small: Vec<usize> = f.pts.iter().copied().filter(|&v| f.geo.ball().depth(v) <= 2).collect();
        let s: Vec<usize> = raw.iter().map(|&i| small[i % small.len()]).collect();
        let h = match f.geo.convex_hull(&s) {
            Ok(h) => h,
            Err(GeomError::HullTruncated(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(&h.vertices, &interval_closure(&f.geo, &s));
        for v in &s {
            prop_assert!(h.contains(*v));
        }
        prop_assert_eq!(f.geo.convex_hull(&h.vertices).unwrap(), h.clone());
        let mut bigger = s.clone();
        bigger.push(small[extra % small.len()]);
        if let Ok(h2) = f.geo.convex_hull(&bigger) {
            prop_assert!(h.vertices.iter().all(|v| h2.contains(*v)));
        }
    }

    #[test]
    fn gate_is_idempotent_and_gated(k in 0usize..3, i in any::<usize>(), j in any::<usize>(), l in any::<usize>()) {
        let f = &fixtures()[k];
        let small: Vec<usize> = f.pts.iter().copied().filter(|&v| f.geo.ball().depth(v) <= 2).collect();
        let c = match f.geo.convex_hull(&[small[i % small.len()], small[j % small.len()]]) {
            Ok(c) => c,
            Err(_) => return Ok(()),
        };
        let x = pick(f, l);
        let g = f.geo.gate(&c, x).unwrap();
        prop_assert_eq!(f.geo.gate(&c, g).unwrap(), g);
        for &v in &c.vertices {
            prop_assert_eq!(f.geo.distance(x, v), f.geo.distance(x, g) + f.geo.distance(g, v));
        }
    }

    #[test]
    fn geodesic_iff_no_hyperplane_twice(k in 0usize..3, i in any::<usize>(), steps in prop::collection::vec(any::<usize>(), 0..7)) {
        let f = &fixtures()[k];
        let ball = f.geo.ball();
        let x = pick(f, i);
        let mut v = x;
        let mut darts = Vec::new();
        for s in steps {
            let nb = ball.neighbors(v);
            let (g, w) = nb[s % nb.len()];
            darts.push(ball.lift_dart(v, g).unwrap());
            v = w;
        }
        let p = Path::new(x, darts);
        let geodesic = p.len() == f.geo.distance(x, v);
        prop_assert_eq!(geodesic, f.geo.crosses_each_hyperplane_once(&p));
    }
}
