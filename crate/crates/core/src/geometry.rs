//! Median-graph geometry on a developed ball: distances, geodesics, medians,
//! convex hulls and gates.
//!
//! Queries refuse points near the frontier. A single vertex is usable when its
//! depth is at most `R-2`; a pair `x, y` additionally needs
//! `|x| + |y| + d(x,y) <= 2(R-1)`, which keeps every geodesic between them at
//! depth at most `R-1`, where the ball agrees with the universal cover.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::ball::{DevelopedBall, Hyperplanes};
use crate::complex::{CubeComplex, CubeRef, Dart};
use crate::path::Path;
use crate::util::bfs;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("vertex {0} is too close to the frontier of the ball")]
    OutOfBall(usize),
    #[error("convex hull reaches the frontier at vertex {0}")]
    HullTruncated(usize),
    #[error("subcomplex is not convex (several closest vertices)")]
    NotConvex,
    #[error("empty vertex set")]
    Empty,
}

/// A full subcomplex, given by its sorted vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subcomplex {
    pub vertices: Vec<usize>,
}

impl Subcomplex {
    pub fn new(mut vertices: Vec<usize>) -> Subcomplex {
        vertices.sort_unstable();
        vertices.dedup();
        Subcomplex { vertices }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges with both endpoints inside.
    pub fn edges(&self, x: &CubeComplex) -> Vec<usize> {
        let mut out = Vec::new();
        for &v in &self.vertices {
            for d in x.out_darts(v) {
                if !d.rev && self.contains(x.head(*d)) {
                    out.push(d.edge);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Cubes of dimension `d >= 2` with every vertex inside.
    pub fn cubes(&self, x: &CubeComplex, d: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &v in &self.vertices {
            for k in x.corners_at(v) {
                if k.cube.dim == d
                    && k.bits == 0
                    && x.cube_vertices(k.cube).iter().all(|w| self.contains(*w))
                {
                    out.push(k.cube.index);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Adjacency restricted to the subcomplex, indexed by position in `vertices`.
    pub fn local_graph(&self, x: &CubeComplex) -> Vec<Vec<usize>> {
        let pos: HashMap<usize, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        self.vertices
            .iter()
            .map(|&v| {
                let mut n: Vec<usize> = x
                    .out_darts(v)
                    .iter()
                    .filter_map(|d| pos.get(&x.head(*d)).copied())
                    .collect();
                n.sort_unstable();
                n.dedup();
                n
            })
            .collect()
    }

    /// Intrinsic graph diameter of the 1-skeleton; `None` when disconnected.
    pub fn diameter(&self, x: &CubeComplex) -> Option<usize> {
        graph_diameter(&self.local_graph(x))
    }
}

/// Diameter of a graph by BFS from every vertex; `None` if disconnected.
pub fn graph_diameter(adj: &[Vec<usize>]) -> Option<usize> {
    let mut best = 0;
    for s in 0..adj.len() {
        let d = bfs(adj, s);
        for &x in &d {
            if x == u32::MAX {
                return None;
            }
            best = best.max(x as usize);
        }
    }
    Some(best)
}

/// Geometry queries over a developed ball with cached distance tables.
pub struct Geometry {
    ball: Arc<DevelopedBall>,
    graph: Vec<Vec<usize>>,
    hyper: Hyperplanes,
    halfspaces: Vec<Vec<u32>>,
    cache: Mutex<HashMap<usize, Arc<Vec<u32>>>>,
}

const CACHE_LIMIT: usize = 1024;

impl Geometry {
    pub fn new(ball: Arc<DevelopedBall>) -> Geometry {
        let graph = ball.graph();
        let hyper = ball.hyperplanes();
        let x = ball.complex();
        // Hyperplanes crossed by the naming path of each vertex.
        let mut halfspaces: Vec<Vec<u32>> = vec![Vec::new(); x.vertex_count()];
        for v in 1..x.vertex_count() {
            let path = ball.name_path(v);
            let lifted = ball.lift_path(0, &path).expect("name path lies in the ball");
            let mut hs: Vec<u32> = lifted.darts.iter().map(|d| hyper.of_edge(d.edge) as u32).collect();
            hs.sort_unstable();
            halfspaces[v] = hs;
        }
        Geometry {
            ball,
            graph,
            hyper,
            halfspaces,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn ball(&self) -> &Arc<DevelopedBall> {
        &self.ball
    }

    pub fn complex(&self) -> &CubeComplex {
        self.ball.complex()
    }

    pub fn hyperplanes(&self) -> &Hyperplanes {
        &self.hyper
    }

    pub fn graph(&self) -> &[Vec<usize>] {
        &self.graph
    }

    /// BFS distances from `x` over the whole ball.
    pub fn dist_from(&self, x: usize) -> Arc<Vec<u32>> {
        if let Some(d) = self.cache.lock().unwrap().get(&x) {
            return d.clone();
        }
        let d = Arc::new(bfs(&self.graph, x));
        let mut c = self.cache.lock().unwrap();
        if c.len() >= CACHE_LIMIT {
            c.clear();
        }
        c.insert(x, d.clone());
        d
    }

    pub fn distance(&self, x: usize, y: usize) -> usize {
        self.dist_from(x)[y] as usize
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.ball.depth(v) + 2 <= self.ball.radius()
    }

    fn check_vertex(&self, v: usize) -> Result<(), GeomError> {
        if self.is_interior(v) {
            Ok(())
        } else {
            Err(GeomError::OutOfBall(v))
        }
    }

    /// The margin rule for a pair.
    pub fn pair_ok(&self, x: usize, y: usize) -> bool {
        if !self.is_interior(x) || !self.is_interior(y) {
            return false;
        }
        let r = self.ball.radius();
        self.ball.depth(x) + self.ball.depth(y) + self.distance(x, y) + 2 <= 2 * r
    }

    fn check_pair(&self, x: usize, y: usize) -> Result<(), GeomError> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if self.pair_ok(x, y) {
            Ok(())
        } else if self.ball.depth(x) >= self.ball.depth(y) {
            Err(GeomError::OutOfBall(x))
        } else {
            Err(GeomError::OutOfBall(y))
        }
    }

    /// Hyperplane classes crossed by the naming geodesic from the root to `v`.
    pub fn halfspace_signature(&self, v: usize) -> &[u32] {
        &self.halfspaces[v]
    }

    /// Number of hyperplanes separating `x` and `y`, from root signatures.
    pub fn separating_count(&self, x: usize, y: usize) -> usize {
        sym_diff_len(&self.halfspaces[x], &self.halfspaces[y])
    }

    /// A geodesic from `x` to `y`, taking the least base germ at each step.
    pub fn geodesic(&self, x: usize, y: usize) -> Result<Path, GeomError> {
        self.check_pair(x, y)?;
        let dy = self.dist_from(y);
        let mut darts = Vec::new();
        let mut v = x;
        while v != y {
            let (g, w) = self
                .ball
                .neighbors(v)
                .iter()
                .copied()
                .find(|&(_, w)| dy[w] + 1 == dy[v])
                .expect("BFS predecessor exists");
            darts.push(self.ball.lift_dart(v, g).expect("neighbor edge"));
            v = w;
        }
        Ok(Path::new(x, darts))
    }

    /// True when no hyperplane is dual to two edges of the path.
    pub fn crosses_each_hyperplane_once(&self, p: &Path) -> bool {
        let mut seen: Vec<usize> = p.darts.iter().map(|d| self.hyper.of_edge(d.edge)).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn median(&self, x: usize, y: usize, z: usize) -> Result<usize, GeomError> {
        self.check_pair(x, y)?;
        self.check_pair(x, z)?;
        self.check_pair(y, z)?;
        Ok(self.median_unchecked(x, y, z))
    }

    /// Walks from `x` toward `y` and `z` simultaneously.
    pub fn median_unchecked(&self, x: usize, y: usize, z: usize) -> usize {
        let dy = self.dist_from(y);
        let dz = self.dist_from(z);
        let mut v = x;
        loop {
            let next = self.graph[v]
                .iter()
                .copied()
                .find(|&w| dy[w] + 1 == dy[v] && dz[w] + 1 == dz[v]);
            match next {
                Some(w) => v = w,
                None => return v,
            }
        }
    }

    /// Median from root signatures: the vertex whose signature is the
    /// majority of the three. Fast; does not use BFS.
    pub fn median_by_signature(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        let (a, b, c) = (&self.halfspaces[x], &self.halfspaces[y], &self.halfspaces[z]);
        let mut target: Vec<u32> = Vec::new();
        for h in a.iter().chain(b).chain(c) {
            let n = [a, b, c].iter().filter(|s| s.binary_search(h).is_ok()).count();
            if n >= 2 {
                target.push(*h);
            }
        }
        target.sort_unstable();
        target.dedup();
        self.vertex_with_signature(&target)
    }

    /// Finds the vertex whose root signature is `target` by walking from the root.
    pub fn vertex_with_signature(&self, target: &[u32]) -> Option<usize> {
        let mut remaining: Vec<u32> = target.to_vec();
        let mut v = self.ball.root();
        let x = self.ball.complex();
        while !remaining.is_empty() {
            let mut moved = false;
            for d in x.out_darts(v) {
                let h = self.hyper.of_edge(d.edge) as u32;
                if let Ok(i) = remaining.binary_search(&h) {
                    let w = x.head(*d);
                    if self.ball.depth(w) == self.ball.depth(v) + 1 {
                        remaining.remove(i);
                        v = w;
                        moved = true;
                        break;
                    }
                }
            }
            if !moved {
                return None;
            }
        }
        (self.halfspaces[v] == target).then_some(v)
    }

    /// Interval `I(x,y)`: vertices on some geodesic.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        let dx = self.dist_from(x);
        let dy = self.dist_from(y);
        let d = dx[y];
        (0..self.graph.len())
            .filter(|&w| dx[w] != u32::MAX && dy[w] != u32::MAX && dx[w] + dy[w] == d)
            .collect()
    }

    /// Convex hull by geodesic connection followed by closure under common
    /// neighbors: in a median graph a connected vertex set that contains every
    /// vertex with two neighbors in it is convex.
    pub fn convex_hull(&self, s: &[usize]) -> Result<Subcomplex, GeomError> {
        let Some(&s0) = s.first() else {
            return Err(GeomError::Empty);
        };
        for &v in s {
            self.check_vertex(v)?;
        }
        let n = self.graph.len();
        let mut inside = vec![false; n];
        let mut members = Vec::new();
        let add = |v: usize, inside: &mut Vec<bool>, members: &mut Vec<usize>| -> Result<bool, GeomError> {
            if inside[v] {
                return Ok(false);
            }
            if !self.is_interior(v) {
                return Err(GeomError::HullTruncated(v));
            }
            inside[v] = true;
            members.push(v);
            Ok(true)
        };
        add(s0, &mut inside, &mut members)?;
        for &t in &s[1..] {
            // one geodesic from s0 to t suffices to connect
            let dt = self.dist_from(t);
            let mut v = s0;
            add(v, &mut inside, &mut members)?;
            while v != t {
                v = self.graph[v]
                    .iter()
                    .copied()
                    .find(|&w| dt[w] + 1 == dt[v])
                    .expect("connected ball");
                add(v, &mut inside, &mut members)?;
            }
        }
        let mut queue: Vec<usize> = members.clone();
        while let Some(v) = queue.pop() {
            for &w in &self.graph[v] {
                if inside[w] {
                    continue;
                }
                let k = self.graph[w].iter().filter(|&&u| inside[u]).count();
                if k >= 2 {
                    add(w, &mut inside, &mut members)?;
                    queue.push(w);
                }
            }
        }
        Ok(Subcomplex::new(members))
    }

    /// The closest vertex of a convex subcomplex to `x`.
    pub fn gate(&self, c: &Subcomplex, x: usize) -> Result<usize, GeomError> {
        self.check_vertex(x)?;
        if c.is_empty() {
            return Err(GeomError::Empty);
        }
        let dx = self.dist_from(x);
        let best = c.vertices.iter().map(|&v| dx[v]).min().unwrap();
        let mut it = c.vertices.iter().filter(|&&v| dx[v] == best);
        let g = *it.next().unwrap();
        if it.next().is_some() {
            return Err(GeomError::NotConvex);
        }
        Ok(g)
    }

    /// Hyperplanes dual to some edge of the subcomplex, sorted.
    pub fn hyperplanes_meeting(&self, c: &Subcomplex) -> Vec<usize> {
        let x = self.complex();
        let mut hs: Vec<usize> = c.edges(x).iter().map(|&e| self.hyper.of_edge(e)).collect();
        hs.sort_unstable();
        hs.dedup();
        hs
    }

    /// Lifts of the base edge `g` leaving vertices of the ball, as darts.
    pub fn lift_dart(&self, v: usize, g: Dart) -> Option<Dart> {
        self.ball.lift_dart(v, g)
    }

    /// Vertices of a cube of the ball.
    pub fn cube_vertices(&self, c: CubeRef) -> Vec<usize> {
        self.complex().cube_vertices(c)
    }
}

fn sym_diff_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                n += 1;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                n += 1;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    n + (a.len() - i) + (b.len() - j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::develop_ball;
    use crate::complex::ComplexBuilder;

    fn torus() -> Arc<CubeComplex> {
        let mut b = ComplexBuilder::new();
        let v = b.add_vertex("v");
        let a = b.add_edge("a", v, v);
        let bb = b.add_edge("b", v, v);
        b.add_cube("s", vec![bb, bb, a, a]);
        Arc::new(b.build().unwrap())
    }

    fn wedge() -> Arc<CubeComplex> {
        let mut b = ComplexBuilder::new();
        let v = b.add_vertex("v");
        b.add_edge("a", v, v);
        b.add_edge("b", v, v);
        Arc::new(b.build().unwrap())
    }

    /// Grid point `(i, j)` as a ball vertex, `a` along the first coordinate.
    fn grid(g: &Geometry, i: i32, j: i32) -> usize {
        let mut darts = Vec::new();
        for _ in 0..i.abs() {
            darts.push(Dart::new(0, i < 0));
        }
        for _ in 0..j.abs() {
            darts.push(Dart::new(1, j < 0));
        }
        g.ball().walk(0, &darts).unwrap()
    }

    #[test]
    fn grid_geodesic_and_median() {
        let g = Geometry::new(Arc::new(develop_ball(torus(), 0, 8).unwrap()));
        let p = g.geodesic(grid(&g, 0, 0), grid(&g, 2, 1)).unwrap();
        assert_eq!(p.len(), 3);
        assert!(g.crosses_each_hyperplane_once(&p));
        assert!(g.geodesic(5, 5).unwrap().is_empty());
        let m = g.median(grid(&g, 0, 0), grid(&g, 3, 0), grid(&g, 0, 3)).unwrap();
        assert_eq!(m, grid(&g, 0, 0));
        let m = g.median(grid(&g, 0, 0), grid(&g, 2, 2), grid(&g, 2, 0)).unwrap();
        assert_eq!(m, grid(&g, 2, 0));
        assert_eq!(g.median_by_signature(grid(&g, 0, 0), grid(&g, 2, 2), grid(&g, 2, 0)), Some(m));
    }

    #[test]
    fn grid_hull_and_gate() {
        let g = Geometry::new(Arc::new(develop_ball(torus(), 0, 8).unwrap()));
        let h = g.convex_hull(&[grid(&g, 0, 0), grid(&g, 2, 1)]).unwrap();
        assert_eq!(h.len(), 6);
        assert_eq!(g.convex_hull(&[grid(&g, 1, 1)]).unwrap().len(), 1);
        assert_eq!(g.convex_hull(&[grid(&g, 0, 0), grid(&g, 1, 0)]).unwrap().len(), 2);
        let seg = Subcomplex::new((0..=3).map(|i| grid(&g, i, 0)).collect());
        assert_eq!(g.gate(&seg, grid(&g, 2, 2)).unwrap(), grid(&g, 2, 0));
        assert_eq!(g.gate(&seg, grid(&g, 1, 0)).unwrap(), grid(&g, 1, 0));
    }

    #[test]
    fn frontier_refused() {
        let g = Geometry::new(Arc::new(develop_ball(torus(), 0, 4).unwrap()));
        let far = grid(&g, 3, 0);
        assert_eq!(g.geodesic(0, far), Err(GeomError::OutOfBall(far)));
        let r = g.convex_hull(&[grid(&g, 1, 0), grid(&g, -1, 1)]);
        assert!(r.is_ok());
        let r = g.convex_hull(&[grid(&g, 2, 0), grid(&g, 0, 2)]);
        assert!(matches!(r, Err(GeomError::HullTruncated(_))));
    }

    #[test]
    fn tree_queries() {
        let g = Geometry::new(Arc::new(develop_ball(wedge(), 0, 6).unwrap()));
        let ball = g.ball().clone();
        let aa = ball.vertex_by_name("a.a").unwrap();
        let bb = ball.vertex_by_name("b.b").unwrap();
        let ab = ball.vertex_by_name("a^-1.b").unwrap();
        assert_eq!(g.geodesic(aa, bb).unwrap().len(), 4);
        assert_eq!(g.median(aa, bb, ab).unwrap(), 0);
        let a = ball.vertex_by_name("a").unwrap();
        let root_edge = Subcomplex::new(vec![0, a]);
        assert_eq!(g.gate(&root_edge, aa).unwrap(), a);
        assert_eq!(g.gate(&root_edge, bb).unwrap(), 0);
    }
}
