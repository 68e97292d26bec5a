#![allow(dead_code)]

use std::sync::Arc;

use cubsc_core::families::{salvetti, wedge, SimpleGraph};
use cubsc_core::{develop_ball, CubeComplex, Dart, DevelopedBall, Geometry};

pub fn torus() -> Arc<CubeComplex> {
    Arc::new(salvetti(&SimpleGraph::new(2, &[(0, 1)])))
}

pub fn wedge2() -> Arc<CubeComplex> {
    Arc::new(wedge(2))
}

pub fn raag_path3() -> Arc<CubeComplex> {
    Arc::new(salvetti(&SimpleGraph::path(3)))
}

pub fn geometry(x: Arc<CubeComplex>, r: usize) -> Geometry {
    Geometry::new(Arc::new(develop_ball(x, 0, r).unwrap()))
}

/// Lattice coordinates of a torus-ball vertex, read off its naming path.
pub fn coords(ball: &DevelopedBall, v: usize) -> (i64, i64) {
    let mut c = (0i64, 0i64);
    for d in ball.name_path(v) {
        let s = if d.rev { -1 } else { 1 };
        let label = ball.base().edge_label(d.edge);
        if label == "a" {
            c.0 += s;
        } else {
            c.1 += s;
        }
    }
    c
}

/// The torus-ball vertex at lattice point `(i, j)`.
pub fn grid(ball: &DevelopedBall, i: i64, j: i64) -> usize {
    let x = ball.base();
    let a = (0..x.edge_count()).find(|&e| x.edge_label(e) == "a").unwrap();
    let b = (0..x.edge_count()).find(|&e| x.edge_label(e) == "b").unwrap();
    let mut darts = Vec::new();
    for _ in 0..i.abs() {
        darts.push(Dart::new(a, i < 0));
    }
    for _ in 0..j.abs() {
        darts.push(Dart::new(b, j < 0));
    }
    ball.walk(0, &darts).unwrap()
}

/// Letters of a free-group vertex name as signed generator indices.
pub fn free_word(ball: &DevelopedBall, v: usize) -> Vec<(usize, bool)> {
    ball.name_path(v).iter().map(|d| (d.edge, d.rev)).collect()
}

/// Tree distance from reduced words: strip the common prefix.
pub fn tree_distance(a: &[(usize, bool)], b: &[(usize, bool)]) -> usize {
    let k = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    a.len() + b.len() - 2 * k
}

/// All vertices of the median `m` of `x, y, z` by brute force: vertices lying
/// on a geodesic between each pair.
pub fn brute_medians(g: &Geometry, x: usize, y: usize, z: usize) -> Vec<usize> {
    let (dx, dy, dz) = (g.dist_from(x), g.dist_from(y), g.dist_from(z));
    (0..g.graph().len())
        .filter(|&m| {
            dx[m] + dy[m] == dx[y] && dy[m] + dz[m] == dy[z] && dx[m] + dz[m] == dx[z]
        })
        .collect()
}

/// Convex hull by iterating interval closure to a fixpoint.
pub fn interval_closure(g: &Geometry, s: &[usize]) -> Vec<usize> {
    let mut set: Vec<usize> = s.to_vec();
    set.sort_unstable();
    set.dedup();
    loop {
        let mut next = set.clone();
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                next.extend(g.interval(set[i], set[j]));
            }
        }
        next.sort_unstable();
        next.dedup();
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Longest common piece of a cyclic word with itself and its inverse:
/// the longest common prefix over pairs of distinct reading positions, where
/// positions reading the same bi-infinite word are the same line.
pub fn cyclic_piece_bound(w: &str) -> usize {
    let inv: String = w
        .chars()
        .rev()
        .map(|c| if c.is_uppercase() { c.to_ascii_lowercase() } else { c.to_ascii_uppercase() })
        .collect();
    let n = w.len();
    let words = [w.as_bytes(), inv.as_bytes()];
    let mut best = 0;
    for s in 0..2 {
        for i in 0..n {
            for t in 0..2 {
                for j in 0..n {
                    if (s, i) == (t, j) {
                        continue;
                    }
                    let mut k = 0;
                    while k < n && words[s][(i + k) % n] == words[t][(j + k) % n] {
                        k += 1;
                    }
                    if k < n {
                        best = best.max(k);
                    }
                }
            }
        }
    }
    best
}
