//! The coned-off graph: the 1-skeleton of a ball with one cone vertex over
//! every hyperplane carrier and, optionally, over every relator copy.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt::Write;
use std::sync::OnceLock;

use cubsc_core::util::bfs;
use cubsc_core::{CubeRef, Hyperplanes};
use cubsc_diagram::cayley::CayleyBall;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConeKind {
    Carrier { hyperplane: usize },
    Relator { relator: usize, copy: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub kind: ConeKind,
    /// Graph vertex of the cone point.
    pub vertex: usize,
    /// Base vertices joined to the cone point, sorted.
    pub members: Vec<usize>,
}

#[derive(Debug)]
pub struct ConeOffGraph {
    base_n: usize,
    adj: Vec<Vec<usize>>,
    cones: Vec<Cone>,
    /// Projection of every cube of the ball, by dimension.
    pi: Vec<Vec<usize>>,
    names: Vec<String>,
    rows: Vec<OnceLock<Vec<u32>>>,
}

/// Cones every hyperplane carrier of the ball and, when `include_relators`
/// is set, every relator copy meeting it.
pub fn build_cone_off(ball: &CayleyBall, include_relators: bool) -> ConeOffGraph {
    let x = ball.complex();
    let hyper = Hyperplanes::of(x);
    let mut sets: Vec<(ConeKind, Vec<usize>)> = (0..hyper.len())
        .map(|h| (ConeKind::Carrier { hyperplane: h }, hyper.carrier(x, h)))
        .collect();
    if include_relators {
        for (i, copy) in ball.relator_copies().into_iter().enumerate() {
            let mut m: Vec<usize> = copy.vertices.iter().map(|p| p.1).collect();
            m.sort_unstable();
            m.dedup();
            sets.push((
                ConeKind::Relator {
                    relator: copy.relator,
                    copy: i,
                },
                m,
            ));
        }
    }
    let base: Vec<Vec<usize>> = ball.graph();
    let mut g = ConeOffGraph::from_graph(base, sets);
    g.names = (0..x.vertex_count()).map(|v| x.vertex_name(v).to_string()).collect();
    // the corner with all coordinates zero: determined by the cube itself,
    // not by vertex numbering
    g.pi = (0..=x.dim())
        .map(|d| (0..x.count(d)).map(|i| x.corner_vertex(CubeRef { dim: d, index: i }, 0)).collect())
        .collect();
    g
}

impl ConeOffGraph {
    /// A cone-off of an arbitrary simple graph. Vertex projections are the
    /// identity and there are no higher cubes.
    pub fn from_graph(base: Vec<Vec<usize>>, sets: Vec<(ConeKind, Vec<usize>)>) -> ConeOffGraph {
        let base_n = base.len();
        let mut adj = base;
        let mut cones = Vec::with_capacity(sets.len());
        for (kind, mut members) in sets {
            members.sort_unstable();
            members.dedup();
            let c = adj.len();
            for &m in &members {
                adj[m].push(c);
            }
            adj.push(members.clone());
            cones.push(Cone {
                kind,
                vertex: c,
                members,
            });
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        let n = adj.len();
        ConeOffGraph {
            base_n,
            adj,
            cones,
            pi: vec![(0..base_n).collect()],
            names: (0..base_n).map(|v| v.to_string()).collect(),
            rows: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn base_vertex_count(&self) -> usize {
        self.base_n
    }

    pub fn is_cone_vertex(&self, v: usize) -> bool {
        v >= self.base_n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn vertex_name(&self, v: usize) -> String {
        match v.checked_sub(self.base_n) {
            None => self.names[v].clone(),
            Some(i) => match self.cones[i].kind {
                ConeKind::Carrier { hyperplane } => format!("H{hyperplane}"),
                ConeKind::Relator { relator, copy } => format!("Y{relator}#{copy}"),
            },
        }
    }

    /// Projection of a cube of the ball to a vertex.
    pub fn project(&self, c: CubeRef) -> usize {
        self.pi[c.dim][c.index]
    }

    pub fn projection_table(&self) -> &[Vec<usize>] {
        &self.pi
    }

    /// The base 1-skeleton: cone vertices and their edges removed.
    pub fn base_graph(&self) -> Vec<Vec<usize>> {
        self.adj[..self.base_n]
            .iter()
            .map(|a| a.iter().copied().filter(|&w| w < self.base_n).collect())
            .collect()
    }

    /// Distances from `v`, cached.
    pub fn distances(&self, v: usize) -> &[u32] {
        self.rows[v].get_or_init(|| bfs(&self.adj, v))
    }

    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.distances(u)[v]
    }

    /// Fills the distance rows of `sources` in parallel.
    pub fn precompute(&self, sources: &[usize]) {
        sources.par_iter().for_each(|&s| {
            self.distances(s);
        });
    }

    /// Largest pairwise distance within `set`.
    pub fn set_diameter(&self, set: &[usize]) -> u32 {
        self.precompute(set);
        let mut best = 0;
        for (i, &a) in set.iter().enumerate() {
            let row = self.distances(a);
            for &b in &set[i + 1..] {
                best = best.max(row[b]);
            }
        }
        best
    }

    /// Distances from `v` up to `limit`; farther vertices are absent.
    pub fn local_distances(&self, v: usize, limit: u32) -> HashMap<usize, u32> {
        let mut seen = HashMap::from([(v, 0)]);
        let mut frontier = vec![v];
        for d in 1..=limit {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adj[u] {
                    if let Entry::Vacant(e) = seen.entry(w) {
                        e.insert(d);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    /// Diameter of `set`, found by bounded searches when it is at most
    /// `limit` and by full searches otherwise.
    pub fn set_diameter_bounded(&self, set: &[usize], limit: u32) -> u32 {
        let mut best = 0;
        for &a in set {
            let local = self.local_distances(a, limit);
            for b in set {
                match local.get(b) {
                    Some(&d) => best = best.max(d),
                    None => return self.set_diameter(set),
                }
            }
        }
        best
    }

    /// Hausdorff distance between two vertex sets.
    pub fn hausdorff(&self, a: &[usize], b: &[usize]) -> u32 {
        let one_way = |s: &[usize], t: &[usize]| {
            self.precompute(s);
            s.iter()
                .map(|&u| {
                    let row = self.distances(u);
                    t.iter().map(|&v| row[v]).min().unwrap_or(u32::MAX)
                })
                .max()
                .unwrap_or(0)
        };
        one_way(a, b).max(one_way(b, a))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph coneoff {\n");
        for v in 0..self.vertex_count() {
            let shape = if self.is_cone_vertex(v) { "diamond" } else { "circle" };
            let _ = writeln!(s, "  n{v} [label=\"{}\", shape={shape}];", self.vertex_name(v).replace('"', "\\\""));
        }
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb.iter().filter(|&&v| v > u) {
                let style = if self.is_cone_vertex(v) { " [style=dashed]" } else { "" };
                let _ = writeln!(s, "  n{u} -- n{v}{style};");
            }
        }
        s.push_str("}\n");
        s
    }

    /// Edge list `u,v,kind` with kind `base` or `cone`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("u,v,kind\n");
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb.iter().filter(|&&v| v > u) {
                let kind = if self.is_cone_vertex(v) { "cone" } else { "base" };
                let _ = writeln!(s, "{u},{v},{kind}");
            }
        }
        s
    }
}
