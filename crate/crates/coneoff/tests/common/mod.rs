#![allow(dead_code)]

use std::collections::VecDeque;
use std::sync::Arc;

use cubsc_core::families::{artin_presentation, salvetti, wedge, ArtinSpec, AxisBudget, SimpleGraph};
use cubsc_core::{CubeComplex, CubicalPresentation};
use cubsc_diagram::cayley::{cayley_ball, CayleyBall};
use cubsc_diagram::SearchBudget;
use num_rational::Ratio;

pub fn plain(x: CubeComplex) -> CubicalPresentation {
    CubicalPresentation::new(Arc::new(x), vec![], Ratio::new(1, 144), true).unwrap()
}

pub fn torus() -> CubicalPresentation {
    plain(salvetti(&SimpleGraph::path(2)))
}

pub fn free2() -> CubicalPresentation {
    plain(wedge(2))
}

pub fn artin(m: u32) -> CubicalPresentation {
    artin_presentation(&ArtinSpec::two_generator(Some(m)), AxisBudget::default()).unwrap().0
}

pub fn ball(p: &CubicalPresentation, r: usize) -> CayleyBall {
    cayley_ball(p, r, &SearchBudget::default()).unwrap()
}

/// Plain queue BFS.
pub fn oracle_bfs(adj: &[Vec<usize>], s: usize) -> Vec<u32> {
    let mut d = vec![u32::MAX; adj.len()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if d[w] == u32::MAX {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

pub fn oracle_diameter(adj: &[Vec<usize>]) -> u32 {
    (0..adj.len()).map(|s| *oracle_bfs(adj, s).iter().max().unwrap()).max().unwrap_or(0)
}

/// Twice the four-point constant by brute force over all quadruples.
pub fn oracle_twice_delta(adj: &[Vec<usize>]) -> u32 {
    let n = adj.len();
    let d: Vec<Vec<u32>> = (0..n).map(|s| oracle_bfs(adj, s)).collect();
    let mut best = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for e in c + 1..n {
                    let s1 = d[a][b] + d[c][e];
                    let s2 = d[a][c] + d[b][e];
                    let s3 = d[a][e] + d[b][c];
                    let mx = s1.max(s2).max(s3);
                    let mid = s1 + s2 + s3 - mx - s1.min(s2).min(s3);
                    best = best.max(mx - mid);
                }
            }
        }
    }
    best
}

/// Grid coordinates of a torus-ball vertex from its name path.
pub fn coords(b: &CayleyBall, v: usize) -> (i64, i64) {
    let x = &b.presentation().base;
    let mut c = (0, 0);
    for d in b.name_path(v) {
        let step = if d.rev { -1 } else { 1 };
        if x.edge_name(d.edge) == "a" {
            c.0 += step;
        } else {
            c.1 += step;
        }
    }
    c
}
