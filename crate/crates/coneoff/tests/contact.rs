mod common;

use common::*;
use cubsc_coneoff::{quasiconvexity_audit, ContactGraph};
use cubsc_core::families::{classical_presentation, CLASSICAL_300};

#[test]
fn contact_edges_are_shared_carrier_vertices() {
    let b = ball(&torus(), 3);
    let c = ContactGraph::build(&b, false);
    let x = b.complex();
    let hyper = cubsc_core::Hyperplanes::of(x);
    assert_eq!(c.hyperplane_count(), hyper.len());
    for h in 0..hyper.len() {
        let ch = hyper.carrier(x, h);
        for k in 0..hyper.len() {
            if k == h {
                continue;
            }
            let ck = hyper.carrier(x, k);
            let meet = ch.iter().any(|v| ck.binary_search(v).is_ok());
            assert_eq!(c.neighbors(h).contains(&k), meet);
        }
    }
    // the l1 ball of radius 3 has 6 + 6 hyperplanes
    assert_eq!(c.hyperplane_count(), 12);
    assert!(c.to_dot().starts_with("graph contact"));
    assert!(c.to_csv().starts_with("u,v\n"));
}

#[test]
fn tree_contact_graph_is_the_line_graph() {
    let b = ball(&free2(), 2);
    let c = ContactGraph::build(&b, false);
    assert_eq!(c.hyperplane_count(), 16);
    let edges: usize = (0..c.vertex_count()).map(|v| c.neighbors(v).len()).sum::<usize>() / 2;
    // sum over vertices of C(deg, 2): root 4, 4 inner vertices of degree 4
    assert_eq!(edges, 6 + 4 * 6);
}

#[test]
fn whole_ball_elevation_is_convex() {
    let b = ball(&torus(), 3);
    let c = ContactGraph::build(&b, false);
    let all: Vec<usize> = (0..c.hyperplane_count()).collect();
    let r = quasiconvexity_audit(&c, &[all], 1);
    assert_eq!(r.constants, vec![0]);
    assert!(r.overlaps.is_empty());
}

#[test]
fn disjoint_elevations_do_not_overlap() {
    let b = ball(&free2(), 4);
    let c = ContactGraph::build(&b, false);
    let d0 = c.distances(0);
    let far = (0..c.hyperplane_count()).find(|&h| d0[h] >= 3).unwrap();
    let r = quasiconvexity_audit(&c, &[vec![0], vec![far]], 1);
    assert_eq!(r.max_overlap(0), None);
    assert_eq!(r.max_overlap(1), None);
    assert!(r.to_csv().lines().count() == 5);
}

#[test]
fn augmented_graph_adds_relator_vertices() {
    let p = classical_presentation(1, &["aaaaa"]).unwrap();
    let b = ball(&p, 5);
    let g = ContactGraph::build(&b, true);
    assert_eq!(g.hyperplane_count(), 5);
    assert_eq!(g.elevations().len(), 1);
    assert_eq!(g.elevations()[0], (0..5).collect::<Vec<_>>());
    assert_eq!(g.vertex_count(), 6);
    let r = quasiconvexity_audit(&ContactGraph::build(&b, false), g.elevations(), 0);
    assert_eq!(r.constants, vec![0]);
}

#[test]
fn artin_elevations_overlap_along_alternating_words() {
    // translates of the axis of (ab)^k a (BA)^k B share alternating
    // subwords; inside the radius-6 ball two elevations through the root
    // share 11 edges, a path of contact diameter 10
    let p = artin(73);
    let b = ball(&p, 6);
    let plain = ContactGraph::build(&b, false);
    let root = b.root();
    let els: Vec<Vec<usize>> = b
        .relator_copies()
        .iter()
        .filter(|c| c.vertices.iter().any(|v| v.1 == root))
        .map(|cp| plain.copy_hyperplanes(&b, cp))
        .collect();
    assert_eq!(els.len(), 24);
    assert!(els.iter().all(|e| e.len() == 12));
    let r = quasiconvexity_audit(&plain, &els, 2);
    assert!(r.constants.iter().all(|&c| c == 0));
    assert_eq!(r.max_overlap(0), Some(10));

    // a relator without long overlaps
    let p = classical_presentation(2, &[CLASSICAL_300]).unwrap();
    let b = ball(&p, 5);
    let plain = ContactGraph::build(&b, false);
    let root = b.root();
    let els: Vec<Vec<usize>> = b
        .relator_copies()
        .iter()
        .filter(|c| c.vertices.iter().any(|v| v.1 == root))
        .map(|cp| plain.copy_hyperplanes(&b, cp))
        .collect();
    let r = quasiconvexity_audit(&plain, &els, 0);
    // pieces have length at most 5
    assert!(r.max_overlap(0).unwrap() <= 4);
}
