//! Finite balls of the generalized Cayley graph.
//!
//! The ball of radius `R` in the universal cover of `X` is developed and its
//! vertices are identified whenever the connecting loop in `X` is
//! null-homotopic in `X*`. Identifications are closed under adjacency, so
//! the result is the image of the developed ball in the cover of `X` with
//! group `ker(pi_1 X -> pi_1 X*)`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use cubsc_core::json::RawComplex;
use cubsc_core::util::{bfs, UnionFind};
use cubsc_core::{develop_ball, BallError, ComplexBuilder, CubeComplex, CubeRef, CubicalPresentation, Dart, DevelopedBall, Path};
use serde::Serialize;

use crate::rewrite::RelatorTables;
use crate::search::{is_null_homotopic_with, NullHomotopy, SearchBudget};

#[derive(thiserror::Error, Debug)]
pub enum CayleyError {
    #[error(transparent)]
    Ball(#[from] BallError),
    #[error("{} vertex pairs left undecided", pairs.len())]
    BudgetExceeded { pairs: Vec<(String, String)> },
    #[error("quotient is not a cube complex: {0}")]
    Quotient(String),
}

#[derive(Clone, Copy, Debug)]
pub struct CayleyOptions {
    pub budget: SearchBudget,
    /// Skip pairs joined by loops of length at most half the least relator
    /// systole. Sound under the small-cancellation hypothesis: a
    /// null-homotopic loop that is essential in `X` contains the outer path
    /// of a shell, which is longer than half a systole.
    pub skip_short: bool,
    /// Lower bound used for the skip when a relator systole is not exact.
    pub systole_search: usize,
}

impl Default for CayleyOptions {
    fn default() -> Self {
        CayleyOptions {
            budget: SearchBudget::default(),
            skip_short: true,
            systole_search: 64,
        }
    }
}

/// An identification of two developed vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fold {
    pub a: String,
    pub b: String,
    /// `relator` when the loop was shown null-homotopic, `adjacent` when
    /// forced by two identified neighbors.
    pub reason: String,
}

/// A copy of a relator complex in the ball: pairs (relator vertex, ball
/// vertex) reached from `start` along paths inside the ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorCopy {
    pub relator: usize,
    pub start: (usize, usize),
    pub vertices: Vec<(usize, usize)>,
    /// Two relator vertices reached the same ball vertex, or one relator
    /// vertex reached two ball vertices.
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct CayleyBall {
    presentation: CubicalPresentation,
    developed: Arc<DevelopedBall>,
    class: Vec<usize>,
    complex: CubeComplex,
    proj: Vec<Vec<usize>>,
    depth: Vec<usize>,
    adj: Vec<Vec<(Dart, usize)>>,
    rep: Vec<usize>,
    folds: Vec<Fold>,
}

pub fn cayley_ball(p: &CubicalPresentation, radius: usize, budget: &SearchBudget) -> Result<CayleyBall, CayleyError> {
    cayley_ball_with(
        p,
        0,
        radius,
        &CayleyOptions {
            budget: *budget,
            ..CayleyOptions::default()
        },
    )
}

pub fn cayley_ball_with(
    p: &CubicalPresentation,
    basepoint: usize,
    radius: usize,
    opts: &CayleyOptions,
) -> Result<CayleyBall, CayleyError> {
    let dev = Arc::new(develop_ball(p.base.clone(), basepoint, radius)?);
    let n = dev.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut folds = Vec::new();
    let mut undecided = Vec::new();

    if !p.relators.is_empty() {
        let tables = RelatorTables::new(p);
        let sys = p
            .relators
            .iter()
            .map(|r| cubsc_core::presentation::systole(r.complex(), opts.systole_search).bound())
            .min()
            .unwrap_or(usize::MAX);
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            groups.entry(dev.project_vertex(v)).or_default().push(v);
        }
        let names: Vec<Vec<Dart>> = (0..n).map(|v| dev.name_path(v)).collect();
        for members in groups.values() {
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    if opts.skip_short && 2 * (dev.depth(u) + dev.depth(v)) <= sys {
                        continue;
                    }
                    if uf.find(u) == uf.find(v) {
                        continue;
                    }
                    let mut w = names[u].clone();
                    w.extend(names[v].iter().rev().map(|d| d.inverse()));
                    let w = Path::new(basepoint, cubsc_core::path::free_reduce(&w));
                    match is_null_homotopic_with(p, &tables, &w, &opts.budget) {
                        NullHomotopy::Yes(_) => {
                            uf.union(u, v);
                            folds.push(fold(&dev, u, v, "relator"));
                        }
                        NullHomotopy::No => {}
                        NullHomotopy::Unknown => undecided.push((u, v)),
                    }
                }
            }
        }
        close_under_adjacency(&dev, &mut uf, &mut folds);
        undecided.retain(|&(u, v)| uf.find(u) != uf.find(v));
        if !undecided.is_empty() {
            let pairs = undecided
                .iter()
                .map(|&(u, v)| (dev.complex().vertex_name(u).to_string(), dev.complex().vertex_name(v).to_string()))
                .collect();
            return Err(CayleyError::BudgetExceeded { pairs });
        }
    }
    quotient(p, dev, &mut uf, folds)
}

fn fold(dev: &DevelopedBall, u: usize, v: usize, reason: &str) -> Fold {
    Fold {
        a: dev.complex().vertex_name(u).to_string(),
        b: dev.complex().vertex_name(v).to_string(),
        reason: reason.to_string(),
    }
}

fn close_under_adjacency(dev: &DevelopedBall, uf: &mut UnionFind, folds: &mut Vec<Fold>) {
    loop {
        let mut seen: HashMap<(usize, Dart), usize> = HashMap::new();
        let mut changed = false;
        for u in 0..dev.vertex_count() {
            let cu = uf.find(u);
            for &(g, w) in dev.neighbors(u) {
                match seen.get(&(cu, g)).copied() {
                    Some(x) => {
                        if uf.find(x) != uf.find(w) {
                            uf.union(x, w);
                            folds.push(fold(dev, x, w, "adjacent"));
                            changed = true;
                        }
                    }
                    None => {
                        seen.insert((cu, g), w);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn quotient(p: &CubicalPresentation, dev: Arc<DevelopedBall>, uf: &mut UnionFind, folds: Vec<Fold>) -> Result<CayleyBall, CayleyError> {
    let x = dev.complex();
    let n = x.vertex_count();
    // classes numbered by least member, which is in BFS order
    let mut class = vec![usize::MAX; n];
    let mut rep = Vec::new();
    let mut root_of: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let r = uf.find(v);
        let c = *root_of.entry(r).or_insert_with(|| {
            rep.push(v);
            rep.len() - 1
        });
        class[v] = c;
    }
    let mut b = ComplexBuilder::new();
    let mut proj: Vec<Vec<usize>> = vec![Vec::new()];
    for &v in &rep {
        b.add_vertex(x.vertex_name(v));
        proj[0].push(dev.project_vertex(v));
    }
    // cube key: (projected cube, class of corner 0)
    let mut index: Vec<HashMap<(usize, usize), usize>> = vec![HashMap::new()];
    for c in 0..rep.len() {
        index[0].insert((proj[0][c], c), c);
    }
    for d in 1..=x.dim() {
        proj.push(Vec::new());
        index.push(HashMap::new());
        for i in 0..x.count(d) {
            let c = CubeRef { dim: d, index: i };
            let pc = dev.project(c).index;
            let key = (pc, class[x.corner_vertex(c, 0)]);
            if index[d].contains_key(&key) {
                continue;
            }
            let faces: Vec<usize> = x
                .faces(c)
                .iter()
                .map(|&f| {
                    let fc = CubeRef { dim: d - 1, index: f };
                    let fk = (dev.project(fc).index, class[x.corner_vertex(fc, 0)]);
                    index[d - 1][&fk]
                })
                .collect();
            let name = x.name(c).to_string();
            if d == 1 {
                b.set_label(name.clone(), p.base.edge_label(pc).to_string());
            }
            let k = b.add_cube(name, faces);
            index[d].insert(key, k);
            proj[d].push(pc);
        }
    }
    let complex = b.build().map_err(|e| CayleyError::Quotient(e.to_string()))?;
    let mut adj: Vec<Vec<(Dart, usize)>> = vec![Vec::new(); rep.len()];
    for u in 0..n {
        for &(g, w) in dev.neighbors(u) {
            adj[class[u]].push((g, class[w]));
        }
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
        a.dedup();
    }
    let plain: Vec<Vec<usize>> = adj.iter().map(|a| a.iter().map(|p| p.1).collect()).collect();
    let depth = bfs(&plain, class[dev.root()]).into_iter().map(|d| d as usize).collect();
    Ok(CayleyBall {
        presentation: p.clone(),
        developed: dev,
        class,
        complex,
        proj,
        depth,
        adj,
        rep,
        folds,
    })
}

#[derive(Serialize)]
struct BallDocument<'a> {
    complex: RawComplex,
    folds: &'a [Fold],
    radius: usize,
}

impl CayleyBall {
    pub fn presentation(&self) -> &CubicalPresentation {
        &self.presentation
    }

    pub fn developed(&self) -> &Arc<DevelopedBall> {
        &self.developed
    }

    pub fn radius(&self) -> usize {
        self.developed.radius()
    }

    pub fn complex(&self) -> &CubeComplex {
        &self.complex
    }

    pub fn vertex_count(&self) -> usize {
        self.complex.vertex_count()
    }

    pub fn root(&self) -> usize {
        self.class[self.developed.root()]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn project_vertex(&self, v: usize) -> usize {
        self.proj[0][v]
    }

    pub fn project_dart(&self, d: Dart) -> Dart {
        Dart::new(self.proj[1][d.edge], d.rev)
    }

    /// The ball vertex that a developed vertex maps to.
    pub fn class_of(&self, developed_vertex: usize) -> usize {
        self.class[developed_vertex]
    }

    /// Neighbors keyed by base germ, sorted.
    pub fn neighbors(&self, u: usize) -> &[(Dart, usize)] {
        &self.adj[u]
    }

    pub fn step(&self, u: usize, g: Dart) -> Option<usize> {
        let i = self.adj[u].binary_search_by(|p| p.0.cmp(&g)).ok()?;
        Some(self.adj[u][i].1)
    }

    pub fn walk(&self, u: usize, darts: &[Dart]) -> Option<usize> {
        darts.iter().try_fold(u, |v, &g| self.step(v, g))
    }

    /// A base path from the root to `v`.
    pub fn name_path(&self, v: usize) -> Vec<Dart> {
        self.developed.name_path(self.rep[v])
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.developed.vertex_by_name(name).map(|v| self.class[v])
    }

    pub fn graph(&self) -> Vec<Vec<usize>> {
        self.adj.iter().map(|a| a.iter().map(|p| p.1).collect()).collect()
    }

    pub fn folds(&self) -> &[Fold] {
        &self.folds
    }

    pub fn distances_from(&self, v: usize) -> Vec<u32> {
        bfs(&self.graph(), v)
    }

    /// A geodesic of the ball graph from `x` to `y` as a base path, choosing
    /// the least germ at each step.
    pub fn geodesic(&self, x: usize, y: usize) -> Option<Vec<Dart>> {
        let to_y = self.distances_from(y);
        if to_y[x] == u32::MAX {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = x;
        while cur != y {
            let &(g, w) = self.adj[cur].iter().find(|(_, w)| to_y[*w] + 1 == to_y[cur])?;
            out.push(g);
            cur = w;
        }
        Some(out)
    }

    /// Copies of every relator complex meeting the ball. Copies with the
    /// same vertex set are listed once.
    pub fn relator_copies(&self) -> Vec<RelatorCopy> {
        let mut out = Vec::new();
        for (ri, r) in self.presentation.relators.iter().enumerate() {
            let y = r.complex();
            let mut covered: HashSet<(usize, usize)> = HashSet::new();
            let mut seen_sets: HashSet<Vec<usize>> = HashSet::new();
            for q in 0..self.vertex_count() {
                for y0 in 0..y.vertex_count() {
                    if r.map.vertex(y0) != self.proj[0][q] || covered.contains(&(y0, q)) {
                        continue;
                    }
                    let copy = self.copy_from(ri, y0, q);
                    covered.extend(copy.vertices.iter().copied());
                    let mut set: Vec<usize> = copy.vertices.iter().map(|p| p.1).collect();
                    set.sort_unstable();
                    if seen_sets.insert(set) {
                        out.push(copy);
                    }
                }
            }
        }
        out
    }

    fn copy_from(&self, ri: usize, y0: usize, q: usize) -> RelatorCopy {
        let r = &self.presentation.relators[ri];
        let y = r.complex();
        let mut at: HashMap<usize, usize> = HashMap::new();
        let mut used: HashMap<usize, usize> = HashMap::new();
        let mut consistent = true;
        at.insert(y0, q);
        used.insert(q, y0);
        let mut queue = VecDeque::from([y0]);
        while let Some(a) = queue.pop_front() {
            let qa = at[&a];
            for &d in y.out_darts(a) {
                let Some(qb) = self.step(qa, r.map.dart(d)) else { continue };
                let b = y.head(d);
                match at.get(&b) {
                    Some(&prev) => consistent &= prev == qb,
                    None => {
                        if used.get(&qb).is_some_and(|&other| other != b) {
                            consistent = false;
                        }
                        at.insert(b, qb);
                        used.insert(qb, b);
                        queue.push_back(b);
                    }
                }
            }
        }
        let mut vertices: Vec<(usize, usize)> = at.into_iter().collect();
        vertices.sort_unstable();
        RelatorCopy {
            relator: ri,
            start: (y0, q),
            vertices,
            consistent,
        }
    }

    /// Pairs of copy vertices whose ball distance differs from their
    /// distance in the relator complex, among pairs where a shortcut would
    /// have to stay inside the ball.
    pub fn isometry_defects(&self, copy: &RelatorCopy) -> Vec<(usize, usize)> {
        let y = self.presentation.relators[copy.relator].complex();
        let yadj: Vec<Vec<usize>> = (0..y.vertex_count()).map(|v| y.out_darts(v).iter().map(|&d| y.head(d)).collect()).collect();
        let g = self.graph();
        let r = self.radius();
        let mut bad = Vec::new();
        for &(a, qa) in &copy.vertices {
            let dy = bfs(&yadj, a);
            let dq = bfs(&g, qa);
            for &(b, qb) in &copy.vertices {
                let want = dy[b] as usize;
                if b <= a || self.depth[qa] + want > r {
                    continue;
                }
                if dq[qb] as usize != want {
                    bad.push((a, b));
                }
            }
        }
        bad
    }

    /// The ball in the complex JSON format with the fold log.
    pub fn to_json(&self) -> String {
        cubsc_core::json::to_canonical_string(&BallDocument {
            complex: RawComplex::from_complex(&self.complex),
            folds: &self.folds,
            radius: self.radius(),
        })
    }

    pub fn to_dot(&self) -> String {
        cubsc_core::dot::skeleton(&self.complex)
    }
}
