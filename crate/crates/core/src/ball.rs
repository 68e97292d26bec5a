//! Finite balls in universal covers.
//!
//! The ball is grown layer by layer. Every vertex of layer `n` has one slot per
//! base germ not yet realized; slots are glued whenever two of them are the
//! two far sides of a square whose near corner already exists in layer `n-1`.
//! For a nonpositively curved base this reproduces the combinatorial ball of
//! the universal cover exactly.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::complex::{ComplexError, CubeComplex, CubeRef, Dart, NpcViolation};
use crate::path::Path;
use crate::util::UnionFind;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum BallError {
    #[error("base complex is not nonpositively curved: {0:?}")]
    NotNpc(NpcViolation),
    #[error("basepoint {0} out of range")]
    BadBasepoint(usize),
    #[error("ball exceeds {limit} vertices")]
    TooLarge { limit: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A developed ball of radius `R` around a lift of a basepoint.
#[derive(Clone, Debug)]
pub struct DevelopedBall {
    base: Arc<CubeComplex>,
    basepoint: usize,
    radius: usize,
    complex: CubeComplex,
    proj: Vec<Vec<usize>>,
    depth: Vec<usize>,
    adj: Vec<Vec<(Dart, usize)>>,
    parent: Vec<Option<(usize, Dart)>>,
    edge_key: HashMap<(usize, usize), usize>,
    cube_key: Vec<HashMap<(usize, usize), usize>>,
}

/// Default cap on developed vertices.
pub const DEFAULT_VERTEX_LIMIT: usize = 2_000_000;

pub fn develop_ball(
    base: Arc<CubeComplex>,
    basepoint: usize,
    radius: usize,
) -> Result<DevelopedBall, BallError> {
    develop_ball_limited(base, basepoint, radius, DEFAULT_VERTEX_LIMIT)
}

pub fn develop_ball_limited(
    base: Arc<CubeComplex>,
    basepoint: usize,
    radius: usize,
    limit: usize,
) -> Result<DevelopedBall, BallError> {
    if basepoint >= base.vertex_count() {
        return Err(BallError::BadBasepoint(basepoint));
    }
    let report = base.check_npc();
    if let Some(v) = report.violation {
        return Err(BallError::NotNpc(v));
    }
    develop_unchecked(base, basepoint, radius, limit)
}

/// Develops without the link check. Callers guarantee the base is NPC.
pub(crate) fn develop_unchecked(
    base: Arc<CubeComplex>,
    basepoint: usize,
    radius: usize,
    limit: usize,
) -> Result<DevelopedBall, BallError> {
    let mut proj0 = vec![basepoint];
    let mut depth = vec![0usize];
    let mut adj: Vec<Vec<(Dart, usize)>> = vec![Vec::new()];
    let mut parent: Vec<Option<(usize, Dart)>> = vec![None];
    let mut layer = vec![0usize];

    let step = |adj: &Vec<Vec<(Dart, usize)>>, u: usize, g: Dart| -> Option<usize> {
        adj[u].iter().find(|(d, _)| *d == g).map(|p| p.1)
    };

    for n in 0..radius {
        let mut slot_of: HashMap<(usize, Dart), usize> = HashMap::new();
        let mut slots: Vec<(usize, Dart)> = Vec::new();
        for &u in &layer {
            for &g in base.out_darts(proj0[u]) {
                if step(&adj, u, g).is_none() {
                    slot_of.insert((u, g), slots.len());
                    slots.push((u, g));
                }
            }
        }
        let mut uf = UnionFind::new(slots.len());
        if n > 0 {
            for &u in &layer {
                let backs = adj[u].clone();
                for (h, z) in backs {
                    for &g in base.out_darts(proj0[u]) {
                        let Some(&su) = slot_of.get(&(u, g)) else { continue };
                        let Some((corner, ah, ag)) = base.square_at(h, g) else { continue };
                        let bz = corner.bits ^ (1 << ah);
                        let gz = base.corner_dart(corner.cube, bz, ag);
                        let Some(u2) = step(&adj, z, gz) else { continue };
                        if depth[u2] != n || u2 == u {
                            continue;
                        }
                        let hu2 = base.corner_dart(corner.cube, bz ^ (1 << ag), ah);
                        if let Some(&s2) = slot_of.get(&(u2, hu2)) {
                            uf.union(su, s2);
                        }
                    }
                }
            }
        }
        let mut class_vertex: HashMap<usize, usize> = HashMap::new();
        let mut next = Vec::new();
        for (s, &(u, g)) in slots.iter().enumerate() {
            let r = uf.find(s);
            let w = match class_vertex.get(&r) {
                Some(&w) => w,
                None => {
                    let w = proj0.len();
                    if w >= limit {
                        return Err(BallError::TooLarge { limit });
                    }
                    proj0.push(base.head(g));
                    depth.push(n + 1);
                    adj.push(Vec::new());
                    parent.push(Some((u, g)));
                    class_vertex.insert(r, w);
                    next.push(w);
                    w
                }
            };
            adj[u].push((g, w));
            adj[w].push((g.inverse(), u));
        }
        layer = next;
    }
    for a in adj.iter_mut() {
        a.sort();
    }
    assemble(base, basepoint, radius, proj0, depth, adj, parent)
}

fn assemble(
    base: Arc<CubeComplex>,
    basepoint: usize,
    radius: usize,
    proj0: Vec<usize>,
    depth: Vec<usize>,
    adj: Vec<Vec<(Dart, usize)>>,
    parent: Vec<Option<(usize, Dart)>>,
) -> Result<DevelopedBall, BallError> {
    let nv = proj0.len();
    let mut labels_unique = true;
    {
        let mut seen = std::collections::HashSet::new();
        for e in 0..base.edge_count() {
            if !seen.insert(base.edge_label(e)) {
                labels_unique = false;
            }
        }
    }
    let tag = |e: usize| -> &str {
        if labels_unique {
            base.edge_label(e)
        } else {
            base.edge_name(e)
        }
    };
    let mut vnames: Vec<String> = Vec::with_capacity(nv);
    for v in 0..nv {
        let name = match parent[v] {
            None => "1".to_string(),
            Some((u, g)) => {
                let step = if g.rev {
                    format!("{}^-1", tag(g.edge))
                } else {
                    tag(g.edge).to_string()
                };
                if u == 0 {
                    step
                } else {
                    format!("{}.{}", vnames[u], step)
                }
            }
        };
        vnames.push(name);
    }

    let mut names: Vec<Vec<String>> = vec![vnames];
    let mut faces: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); nv]];
    let mut proj = vec![proj0];
    let mut edge_key = HashMap::new();
    let mut enames = Vec::new();
    let mut efaces = Vec::new();
    let mut eproj = Vec::new();
    let mut labels = BTreeMap::new();
    for u in 0..nv {
        for &(g, w) in &adj[u] {
            if g.rev {
                continue;
            }
            let idx = enames.len();
            edge_key.insert((g.edge, u), idx);
            let n = format!("{}:{}", names[0][u], base.edge_name(g.edge));
            labels.insert(n.clone(), base.edge_label(g.edge).to_string());
            enames.push(n);
            efaces.push(vec![u, w]);
            eproj.push(g.edge);
        }
    }
    names.push(enames);
    faces.push(efaces);
    proj.push(eproj);

    let step = |u: usize, g: Dart| -> Option<usize> {
        adj[u].binary_search_by(|p| p.0.cmp(&g)).ok().map(|i| adj[u][i].1)
    };
    // Base cubes of dimension >= 2 grouped by the vertex at corner 0.
    let mut origin: Vec<Vec<CubeRef>> = vec![Vec::new(); base.vertex_count()];
    for d in 2..=base.dim() {
        for i in 0..base.count(d) {
            let c = CubeRef { dim: d, index: i };
            origin[base.corner_vertex(c, 0)].push(c);
        }
    }
    let mut cube_key: Vec<HashMap<(usize, usize), usize>> = vec![HashMap::new(), HashMap::new()];
    for d in 2..=base.dim() {
        let mut cnames = Vec::new();
        let mut cfaces = Vec::new();
        let mut cproj = Vec::new();
        let mut keys = HashMap::new();
        for u in 0..nv {
            for &c in &origin[proj[0][u]] {
                if c.dim != d {
                    continue;
                }
                let mut corner = vec![usize::MAX; 1 << d];
                corner[0] = u;
                let mut ok = true;
                for b in 1u32..(1 << d) {
                    let k = b.trailing_zeros() as usize;
                    let prev = b ^ (1 << k);
                    let dart = base.corner_dart(c, prev, k);
                    match step(corner[prev as usize], dart) {
                        Some(w) => corner[b as usize] = w,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                let mut f = Vec::with_capacity(2 * d);
                for axis in 0..d {
                    for side in 0..2u32 {
                        let fc = base.face(c, axis, side);
                        let o = corner[(side << axis) as usize];
                        let id = if d - 1 == 1 {
                            edge_key[&(fc.index, o)]
                        } else {
                            cube_key[d - 1][&(fc.index, o)]
                        };
                        f.push(id);
                    }
                }
                keys.insert((c.index, u), cnames.len());
                cnames.push(format!("{}:{}", names[0][u], base.name(c)));
                cfaces.push(f);
                cproj.push(c.index);
            }
        }
        names.push(cnames);
        faces.push(cfaces);
        proj.push(cproj);
        cube_key.push(keys);
    }
    let complex = CubeComplex::from_parts(names, faces, labels)?;
    Ok(DevelopedBall {
        base,
        basepoint,
        radius,
        complex,
        proj,
        depth,
        adj,
        parent,
        edge_key,
        cube_key,
    })
}

impl DevelopedBall {
    pub fn base(&self) -> &Arc<CubeComplex> {
        &self.base
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// The lift of the basepoint.
    pub fn root(&self) -> usize {
        0
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn complex(&self) -> &CubeComplex {
        &self.complex
    }

    pub fn vertex_count(&self) -> usize {
        self.complex.vertex_count()
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Within distance 1 of the frontier.
    pub fn is_frontier(&self, v: usize) -> bool {
        self.depth[v] + 1 >= self.radius
    }

    /// Image of a ball cube in the base.
    pub fn project(&self, c: CubeRef) -> CubeRef {
        CubeRef {
            dim: c.dim,
            index: self.proj[c.dim][c.index],
        }
    }

    pub fn project_vertex(&self, v: usize) -> usize {
        self.proj[0][v]
    }

    pub fn project_dart(&self, d: Dart) -> Dart {
        Dart::new(self.proj[1][d.edge], d.rev)
    }

    /// Neighbors of `u` keyed by base germ, sorted.
    pub fn neighbors(&self, u: usize) -> &[(Dart, usize)] {
        &self.adj[u]
    }

    /// The neighbor of `u` along the base germ `g`.
    pub fn step(&self, u: usize, g: Dart) -> Option<usize> {
        self.adj[u]
            .binary_search_by(|p| p.0.cmp(&g))
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    /// The ball dart leaving `u` over the base germ `g`.
    pub fn lift_dart(&self, u: usize, g: Dart) -> Option<Dart> {
        if g.rev {
            let w = self.step(u, g)?;
            self.edge_key.get(&(g.edge, w)).map(|&e| Dart::new(e, true))
        } else {
            self.edge_key.get(&(g.edge, u)).map(|&e| Dart::forward(e))
        }
    }

    /// The lift of a base cube with corner 0 at `u`.
    pub fn lift_cube(&self, c: CubeRef, u: usize) -> Option<CubeRef> {
        match c.dim {
            0 => (self.proj[0][u] == c.index).then_some(CubeRef { dim: 0, index: u }),
            1 => self.edge_key.get(&(c.index, u)).map(|&i| CubeRef { dim: 1, index: i }),
            d => self
                .cube_key
                .get(d)
                .and_then(|m| m.get(&(c.index, u)))
                .map(|&i| CubeRef { dim: d, index: i }),
        }
    }

    /// Lifts a base path starting at ball vertex `u`.
    pub fn lift_path(&self, u: usize, darts: &[Dart]) -> Option<Path> {
        let mut out = Vec::with_capacity(darts.len());
        let mut v = u;
        for &g in darts {
            let d = self.lift_dart(v, g)?;
            out.push(d);
            v = self.complex.head(d);
        }
        Some(Path::new(u, out))
    }

    /// Endpoint of the lift of a base path, if it stays in the ball.
    pub fn walk(&self, u: usize, darts: &[Dart]) -> Option<usize> {
        let mut v = u;
        for &g in darts {
            v = self.step(v, g)?;
        }
        Some(v)
    }

    /// The shortlex-first base path from the root to `v`.
    pub fn name_path(&self, v: usize) -> Vec<Dart> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some((u, g)) = self.parent[cur] {
            out.push(g);
            cur = u;
        }
        out.reverse();
        out
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        match self.complex.lookup(name) {
            Some(c) if c.dim == 0 => Some(c.index),
            _ => None,
        }
    }

    /// Plain adjacency lists of the 1-skeleton.
    pub fn graph(&self) -> Vec<Vec<usize>> {
        self.adj.iter().map(|a| a.iter().map(|p| p.1).collect()).collect()
    }

    pub fn hyperplanes(&self) -> Hyperplanes {
        Hyperplanes::of(&self.complex)
    }
}

/// Hyperplanes of a complex: classes of edges under the opposite-edge relation
/// in squares.
#[derive(Clone, Debug)]
pub struct Hyperplanes {
    of_edge: Vec<usize>,
    edges: Vec<Vec<usize>>,
    crossings: Vec<Vec<usize>>,
}

/// A single hyperplane with its dual edges and carrier vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub id: usize,
    pub edges: Vec<usize>,
    pub carrier: Vec<usize>,
}

impl Hyperplanes {
    pub fn of(x: &CubeComplex) -> Hyperplanes {
        let ne = x.edge_count();
        let mut uf = UnionFind::new(ne);
        for i in 0..x.square_count() {
            let s = CubeRef { dim: 2, index: i };
            let f = x.faces(s);
            uf.union(f[0], f[1]);
            uf.union(f[2], f[3]);
        }
        let (of_edge, k) = uf.classes();
        let mut edges = vec![Vec::new(); k];
        for (e, &h) in of_edge.iter().enumerate() {
            edges[h].push(e);
        }
        let mut crossings = vec![Vec::new(); k];
        for i in 0..x.square_count() {
            let f = x.faces(CubeRef { dim: 2, index: i });
            let (a, b) = (of_edge[f[0]], of_edge[f[2]]);
            crossings[a].push(b);
            crossings[b].push(a);
        }
        for c in crossings.iter_mut() {
            c.sort_unstable();
            c.dedup();
        }
        Hyperplanes {
            of_edge,
            edges,
            crossings,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn of_edge(&self, e: usize) -> usize {
        self.of_edge[e]
    }

    pub fn edges(&self, h: usize) -> &[usize] {
        &self.edges[h]
    }

    /// Hyperplanes crossing `h`, sorted.
    pub fn crossings(&self, h: usize) -> &[usize] {
        &self.crossings[h]
    }

    pub fn cross(&self, a: usize, b: usize) -> bool {
        self.crossings[a].binary_search(&b).is_ok()
    }

    /// Vertices of the carrier: endpoints of dual edges. The carrier of a
    /// hyperplane is convex, hence the full subcomplex on these vertices.
    pub fn carrier(&self, x: &CubeComplex, h: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges[h]
            .iter()
            .flat_map(|&e| [x.source(e), x.target(e)])
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn hyperplane(&self, x: &CubeComplex, h: usize) -> Hyperplane {
        Hyperplane {
            id: h,
            edges: self.edges[h].clone(),
            carrier: self.carrier(x, h),
        }
    }

    pub fn all(&self, x: &CubeComplex) -> Vec<Hyperplane> {
        (0..self.len()).map(|h| self.hyperplane(x, h)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
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

    #[test]
    fn torus_ball_counts() {
        for (r, n) in [(0, 1), (1, 5), (2, 13), (3, 25)] {
            let ball = develop_ball(torus(), 0, r).unwrap();
            assert_eq!(ball.vertex_count(), n, "radius {r}");
        }
        let ball = develop_ball(torus(), 0, 2).unwrap();
        // squares of the |x|+|y| <= 2 diamond
        assert_eq!(ball.complex().square_count(), 4);
        assert!(ball.complex().check_npc().npc);
    }

    #[test]
    fn wedge_ball_is_tree() {
        let ball = develop_ball(wedge(), 0, 2).unwrap();
        assert_eq!(ball.vertex_count(), 17);
        assert_eq!(ball.complex().edge_count(), 16);
        let h = ball.hyperplanes();
        assert_eq!(h.len(), 16);
    }

    #[test]
    fn names_are_shortlex() {
        let ball = develop_ball(torus(), 0, 2).unwrap();
        let v = ball.vertex_by_name("a.b").unwrap();
        assert_eq!(ball.depth(v), 2);
        assert!(ball.vertex_by_name("b.a").is_none());
        assert_eq!(ball.walk(0, &[Dart::forward(1), Dart::forward(0)]), Some(v));
    }

    #[test]
    fn torus_hyperplanes_are_grid_lines() {
        let ball = develop_ball(torus(), 0, 2).unwrap();
        let h = ball.hyperplanes();
        // vertical lines x = -1.5 .. 1.5 and horizontal likewise
        assert_eq!(h.len(), 8);
        let crossing_pairs: usize = (0..h.len()).map(|i| h.crossings(i).len()).sum();
        assert_eq!(crossing_pairs, 2 * 4);
    }

    #[test]
    fn non_npc_rejected() {
        let mut b = ComplexBuilder::new();
        let v = b.add_vertex("v");
        let e: Vec<usize> = ["a", "b", "c"].iter().map(|n| b.add_edge(*n, v, v)).collect();
        b.add_cube("ab", vec![e[1], e[1], e[0], e[0]]);
        b.add_cube("ac", vec![e[2], e[2], e[0], e[0]]);
        b.add_cube("bc", vec![e[2], e[2], e[1], e[1]]);
        let x = Arc::new(b.build().unwrap());
        assert!(matches!(develop_ball(x, 0, 2), Err(BallError::NotNpc(_))));
    }
}
