//! Contact graphs of balls and quasiconvexity of relator elevations in them.

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::OnceLock;

use cubsc_core::util::{bfs, bfs_multi};
use cubsc_core::Hyperplanes;
use cubsc_diagram::cayley::{CayleyBall, RelatorCopy};
use rayon::prelude::*;
use serde::Serialize;

/// Hyperplanes of a ball, adjacent when their carriers share a vertex. The
/// augmented form adds one vertex per relator copy, adjacent to the
/// hyperplanes dual to the copy's edges.
#[derive(Debug)]
pub struct ContactGraph {
    hyperplanes: usize,
    edge_hyperplane: Vec<usize>,
    adj: Vec<Vec<usize>>,
    elevations: Vec<Vec<usize>>,
    rows: Vec<OnceLock<Vec<u32>>>,
}

impl ContactGraph {
    pub fn build(ball: &CayleyBall, include_relators: bool) -> ContactGraph {
        let x = ball.complex();
        let hyper = Hyperplanes::of(x);
        let h = hyper.len();
        let edge_hyperplane: Vec<usize> = (0..x.edge_count()).map(|e| hyper.of_edge(e)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); h];
        for v in 0..x.vertex_count() {
            let mut at: Vec<usize> = x.out_darts(v).iter().map(|d| edge_hyperplane[d.edge]).collect();
            at.sort_unstable();
            at.dedup();
            for (i, &a) in at.iter().enumerate() {
                for &b in &at[i + 1..] {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        let mut g = ContactGraph {
            hyperplanes: h,
            edge_hyperplane,
            adj,
            elevations: Vec::new(),
            rows: Vec::new(),
        };
        if include_relators {
            for copy in ball.relator_copies() {
                let hs = g.copy_hyperplanes(ball, &copy);
                let c = g.adj.len();
                for &k in &hs {
                    g.adj[k].push(c);
                }
                g.adj.push(hs.clone());
                g.elevations.push(hs);
            }
        }
        for a in g.adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        g.rows = (0..g.adj.len()).map(|_| OnceLock::new()).collect();
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplanes
    }

    pub fn hyperplane_of_edge(&self, e: usize) -> usize {
        self.edge_hyperplane[e]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    /// Hyperplane sets of the relator-copy vertices, in vertex order after
    /// the hyperplanes.
    pub fn elevations(&self) -> &[Vec<usize>] {
        &self.elevations
    }

    pub fn distances(&self, v: usize) -> &[u32] {
        self.rows[v].get_or_init(|| bfs(&self.adj, v))
    }

    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.distances(u)[v]
    }

    /// Hyperplanes dual to the edges of a relator copy.
    pub fn copy_hyperplanes(&self, ball: &CayleyBall, copy: &RelatorCopy) -> Vec<usize> {
        let x = ball.complex();
        let r = &ball.presentation().relators[copy.relator];
        let y = r.complex();
        let at: HashMap<usize, usize> = copy.vertices.iter().copied().collect();
        let mut out = Vec::new();
        for (&a, &qa) in &at {
            for &d in y.out_darts(a) {
                let Some(&qb) = at.get(&y.head(d)) else { continue };
                let image = r.map.dart(d);
                for &bd in x.out_darts(qa) {
                    if x.head(bd) == qb && ball.project_dart(bd) == image {
                        out.push(self.edge_hyperplane[bd.edge]);
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph contact {\n");
        for v in 0..self.vertex_count() {
            let label = if v < self.hyperplanes { format!("H{v}") } else { format!("E{}", v - self.hyperplanes) };
            let _ = writeln!(s, "  n{v} [label=\"{label}\"];");
        }
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb.iter().filter(|&&v| v > u) {
                let _ = writeln!(s, "  n{u} -- n{v};");
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("u,v\n");
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb.iter().filter(|&&v| v > u) {
                let _ = writeln!(s, "{u},{v}");
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Overlap {
    pub a: usize,
    pub b: usize,
    pub r: u32,
    /// Diameter of the part of elevation `b` within `r` of elevation `a`;
    /// `None` when empty.
    pub diameter: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiconvexityReport {
    /// Per elevation: the largest distance from a vertex on a geodesic
    /// between two of its vertices back to the elevation.
    pub constants: Vec<u32>,
    pub overlaps: Vec<Overlap>,
}

impl QuasiconvexityReport {
    /// Largest overlap diameter at radius `r`.
    pub fn max_overlap(&self, r: u32) -> Option<u32> {
        self.overlaps.iter().filter(|o| o.r == r).filter_map(|o| o.diameter).max()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("a,b,r,diameter\n");
        for o in &self.overlaps {
            let d = o.diameter.map_or(String::new(), |d| d.to_string());
            let _ = writeln!(s, "{},{},{},{d}", o.a, o.b, o.r);
        }
        s
    }
}

/// Measures quasiconvexity of each vertex set in `elevations` and the
/// diameters of pairwise `r`-neighborhood overlaps for `r <= r_max`.
pub fn quasiconvexity_audit(c: &ContactGraph, elevations: &[Vec<usize>], r_max: u32) -> QuasiconvexityReport {
    let near: Vec<Vec<u32>> = elevations.par_iter().map(|s| bfs_multi(&c.adj, s)).collect();
    let constants: Vec<u32> = elevations
        .iter()
        .zip(&near)
        .map(|(s, ds)| {
            let mut worst = 0;
            for (i, &a) in s.iter().enumerate() {
                let ra = c.distances(a);
                for &b in &s[i + 1..] {
                    let rb = c.distances(b);
                    let d = ra[b];
                    for v in 0..c.vertex_count() {
                        if ra[v] != u32::MAX && rb[v] != u32::MAX && ra[v] + rb[v] == d {
                            worst = worst.max(ds[v]);
                        }
                    }
                }
            }
            worst
        })
        .collect();
    let mut overlaps = Vec::new();
    for (a, da) in near.iter().enumerate() {
        for (b, sb) in elevations.iter().enumerate() {
            if a == b {
                continue;
            }
            for r in 0..=r_max {
                let t: Vec<usize> = sb.iter().copied().filter(|&v| da[v] <= r).collect();
                let diameter = if t.is_empty() {
                    None
                } else {
                    let mut m = 0;
                    for (i, &u) in t.iter().enumerate() {
                        let ru = c.distances(u);
                        for &v in &t[i + 1..] {
                            m = m.max(ru[v]);
                        }
                    }
                    Some(m)
                };
                overlaps.push(Overlap { a, b, r, diameter });
            }
        }
    }
    QuasiconvexityReport { constants, overlaps }
}
