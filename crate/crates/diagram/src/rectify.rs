//! Re-celling into cone-cells, rectangles and shards, with angles and
//! curvature. Angles are exact rationals in units of `pi`.
//!
//! Re-celling rule:
//! 1. Each interior vertex of degree three whose three corners lie in three
//!    distinct squares becomes the centre of a shard: the vertex and its three
//!    edges are removed and the squares merged. Sites are taken in vertex
//!    order; a square already in a shard is not reused.
//! 2. Repeatedly, the dual curve with the longest run of consecutive squares
//!    not yet assigned (ties: first in `dual_curves` order) contributes that
//!    run as a rectangle; the edges it crosses between consecutive squares
//!    are removed. A run whose union is not bounded by a single simple cycle
//!    is shortened from its end until it is.
//! 3. Squares left over are single-square rectangles.
//!
//! Angles: a merged corner gets the sum of the original square corners, each
//! `1/2`. A cone-cell corner gets `1` when both its edges lie on the
//! boundary, `1/2` when exactly one does or when it sits at a boundary
//! vertex, and otherwise `max(0, (2 - s)/n)` where `s` is the total of the
//! non-cone angles at that interior vertex and `n` its number of cone
//! corners. The defect of a corner is `1 - angle`.

use std::collections::{BTreeMap, HashMap, HashSet};

use cubsc_core::Dart;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::diagram::{DiscDiagram, Owner};

pub type Angle = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RKind {
    Cone,
    Rectangle,
    Shard,
}

/// A cell of the rectified diagram. `angles[k]` is the angle at
/// `tail(darts[k])` between `darts[k-1]` and `darts[k]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RCell {
    pub kind: RKind,
    pub faces: Vec<usize>,
    pub darts: Vec<Dart>,
    pub angles: Vec<Angle>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RectifiedDiagram {
    pub diagram: DiscDiagram,
    pub removed_edges: Vec<usize>,
    pub cells: Vec<RCell>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Curvature {
    pub vertices: BTreeMap<usize, Angle>,
    pub faces: Vec<Angle>,
    pub total: Angle,
}

fn half() -> Angle {
    Ratio::new(1, 2)
}

/// Boundary cycles of the union of `faces` with `cut` edges removed; each
/// entry pairs a dart with the number of original corners merged before it.
fn merged_cycles(d: &DiscDiagram, owners: &HashMap<Dart, Owner>, faces: &[usize], cut: &HashSet<usize>) -> Vec<Vec<(Dart, usize)>> {
    let inside: HashSet<usize> = faces.iter().copied().collect();
    let mut seen: HashSet<Dart> = HashSet::new();
    let mut cycles = Vec::new();
    for &f in faces {
        for &start in &d.faces[f].darts {
            if cut.contains(&start.edge) || seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            loop {
                seen.insert(cur);
                // walk to the next kept dart, counting corners
                let Some(Owner::Face { face, pos }) = owners.get(&cur).copied() else { unreachable!() };
                let mut corners = 1;
                let mut next = d.faces[face].darts[(pos + 1) % d.faces[face].darts.len()];
                while cut.contains(&next.edge) {
                    let Some(Owner::Face { face: g, pos: q }) = owners.get(&next.inverse()).copied() else {
                        break;
                    };
                    if !inside.contains(&g) {
                        break;
                    }
                    corners += 1;
                    next = d.faces[g].darts[(q + 1) % d.faces[g].darts.len()];
                }
                cycle.push((next, corners));
                cur = next;
                if cur == start || cycle.len() > 4 * d.edges.len() + 4 {
                    break;
                }
            }
            cycles.push(cycle);
        }
    }
    cycles
}

fn simple(d: &DiscDiagram, cycle: &[(Dart, usize)]) -> bool {
    let mut tails = HashSet::new();
    cycle.iter().all(|(x, _)| tails.insert(d.tail(*x)))
}

fn merge(d: &DiscDiagram, owners: &HashMap<Dart, Owner>, faces: &[usize], cut: &HashSet<usize>, kind: RKind) -> Option<RCell> {
    let cycles = merged_cycles(d, owners, faces, cut);
    if cycles.len() != 1 || !simple(d, &cycles[0]) {
        return None;
    }
    let cycle = &cycles[0];
    Some(RCell {
        kind,
        faces: faces.to_vec(),
        darts: cycle.iter().map(|(x, _)| *x).collect(),
        angles: cycle.iter().map(|(_, c)| half() * Ratio::from_integer(*c as i64)).collect(),
    })
}

/// The edge a dual curve crosses when moving from the square at `a` to the
/// square at `b`.
fn rung(d: &DiscDiagram, a: (usize, usize), b: (usize, usize)) -> Option<usize> {
    let fa = &d.faces[a.0].darts;
    let fb = &d.faces[b.0].darts;
    for &x in [fa[a.1], fa[a.1 + 2]].iter() {
        for &y in [fb[b.1], fb[b.1 + 2]].iter() {
            if x == y.inverse() {
                return Some(x.edge);
            }
        }
    }
    None
}

pub fn rectify(d: &DiscDiagram) -> RectifiedDiagram {
    let owners = d.owners();
    let sigma = d.rotation();
    let mut assigned = vec![false; d.faces.len()];
    let mut cells = Vec::new();
    let mut removed = Vec::new();
    let boundary_vertices: HashSet<usize> = d.boundary_vertices().into_iter().collect();

    // shards
    for v in crate::moves::hexagon_sites(d) {
        let spokes = d.rotation_at(&sigma, v);
        let faces: Vec<usize> = spokes
            .iter()
            .filter_map(|e| match owners.get(&sigma[e]) {
                Some(Owner::Face { face, .. }) => Some(*face),
                _ => None,
            })
            .collect();
        if faces.iter().any(|&f| assigned[f]) {
            continue;
        }
        let cut: HashSet<usize> = spokes.iter().map(|e| e.edge).collect();
        if let Some(cell) = merge(d, &owners, &faces, &cut, RKind::Shard) {
            for &f in &faces {
                assigned[f] = true;
            }
            removed.extend(cut);
            cells.push(cell);
        }
    }

    // rectangles along dual curves
    let curves = d.dual_curves();
    loop {
        let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
        for c in &curves {
            let mut run: Vec<(usize, usize)> = Vec::new();
            let mut used = HashSet::new();
            let flush = |run: &mut Vec<(usize, usize)>, best: &mut Option<(usize, Vec<(usize, usize)>)>| {
                if !run.is_empty() && best.as_ref().map_or(true, |(l, _)| run.len() > *l) {
                    *best = Some((run.len(), run.clone()));
                }
                run.clear();
            };
            for &sq in &c.squares {
                if assigned[sq.0] || !used.insert(sq.0) {
                    flush(&mut run, &mut best);
                } else {
                    run.push(sq);
                }
            }
            flush(&mut run, &mut best);
        }
        let Some((_, mut run)) = best else { break };
        loop {
            let mut cut = HashSet::new();
            let mut ok = true;
            for w in run.windows(2) {
                match rung(d, w[0], w[1]) {
                    Some(e) => {
                        cut.insert(e);
                    }
                    None => ok = false,
                }
            }
            let faces: Vec<usize> = run.iter().map(|s| s.0).collect();
            if ok {
                if let Some(cell) = merge(d, &owners, &faces, &cut, RKind::Rectangle) {
                    for &f in &faces {
                        assigned[f] = true;
                    }
                    removed.extend(cut);
                    cells.push(cell);
                    break;
                }
            }
            run.pop();
            if run.is_empty() {
                break;
            }
        }
    }
    for f in d.square_faces() {
        if !assigned[f] {
            // a lone square whose run could not be merged
            let cell = merge(d, &owners, &[f], &HashSet::new(), RKind::Rectangle).expect("square is a cycle");
            assigned[f] = true;
            cells.push(cell);
        }
    }

    // cone-cells
    let first_cone = cells.len();
    for f in d.cone_faces() {
        let darts = d.faces[f].darts.clone();
        let n = darts.len();
        let mut angles = Vec::with_capacity(n);
        for k in 0..n {
            let prev = darts[(k + n - 1) % n];
            let cur = darts[k];
            let on = |x: Dart| d.on_boundary(&owners, x);
            let v = d.tail(cur);
            angles.push(match (on(prev), on(cur)) {
                (true, true) => Angle::one(),
                (true, false) | (false, true) => half(),
                (false, false) if boundary_vertices.contains(&v) => half(),
                // settled below
                (false, false) => -Angle::one(),
            });
        }
        cells.push(RCell {
            kind: RKind::Cone,
            faces: vec![f],
            darts,
            angles,
        });
    }
    // interior cone corners: spread what remains of 2 at the vertex
    let mut other: HashMap<usize, Angle> = HashMap::new();
    let mut pending: HashMap<usize, usize> = HashMap::new();
    for c in &cells {
        for (k, a) in c.angles.iter().enumerate() {
            let v = d.tail(c.darts[k]);
            if *a < Angle::zero() {
                *pending.entry(v).or_default() += 1;
            } else {
                *other.entry(v).or_insert_with(Angle::zero) += *a;
            }
        }
    }
    for c in cells.iter_mut().skip(first_cone) {
        for k in 0..c.angles.len() {
            if c.angles[k] < Angle::zero() {
                let v = d.tail(c.darts[k]);
                let s = other.get(&v).copied().unwrap_or_else(Angle::zero);
                let n = pending[&v] as i64;
                let a = (Angle::from_integer(2) - s) / Angle::from_integer(n);
                c.angles[k] = if a > Angle::zero() { a } else { Angle::zero() };
            }
        }
    }
    removed.sort_unstable();
    removed.dedup();
    RectifiedDiagram {
        diagram: d.clone(),
        removed_edges: removed,
        cells,
    }
}

impl RectifiedDiagram {
    /// Vertices that keep at least one edge, or the single vertex of a point.
    pub fn vertices(&self) -> Vec<usize> {
        let d = &self.diagram;
        let removed: HashSet<usize> = self.removed_edges.iter().copied().collect();
        let mut vs = HashSet::new();
        for (e, ed) in d.edges.iter().enumerate() {
            if !removed.contains(&e) {
                vs.insert(ed.src);
                vs.insert(ed.dst);
            }
        }
        if vs.is_empty() {
            vs.insert(d.base);
        }
        let mut out: Vec<usize> = vs.into_iter().collect();
        out.sort_unstable();
        out
    }

    pub fn kept_edges(&self) -> Vec<usize> {
        let removed: HashSet<usize> = self.removed_edges.iter().copied().collect();
        (0..self.diagram.edges.len()).filter(|e| !removed.contains(e)).collect()
    }

    /// Total angle at each vertex.
    pub fn angle_sums(&self) -> HashMap<usize, Angle> {
        let mut out: HashMap<usize, Angle> = HashMap::new();
        for c in &self.cells {
            for (k, a) in c.angles.iter().enumerate() {
                *out.entry(self.diagram.tail(c.darts[k])).or_insert_with(Angle::zero) += *a;
            }
        }
        out
    }

    pub fn count(&self, kind: RKind) -> usize {
        self.cells.iter().filter(|c| c.kind == kind).count()
    }
}

/// `kappa(f) = 2 - sum(1 - angle)` per cell and
/// `kappa(v) = 2 - sum(angle) - chi(link v)` per vertex, in units of `pi`.
/// The link of a vertex has one point per incident dart and one arc per
/// corner.
pub fn curvature(r: &RectifiedDiagram) -> Curvature {
    let d = &r.diagram;
    let faces: Vec<Angle> = r
        .cells
        .iter()
        .map(|c| {
            let defect: Angle = c.angles.iter().map(|a| Angle::one() - a).sum();
            Angle::from_integer(2) - defect
        })
        .collect();
    let mut darts: HashMap<usize, i64> = HashMap::new();
    for e in r.kept_edges() {
        *darts.entry(d.edges[e].src).or_default() += 1;
        *darts.entry(d.edges[e].dst).or_default() += 1;
    }
    let mut corners: HashMap<usize, i64> = HashMap::new();
    for c in &r.cells {
        for x in &c.darts {
            *corners.entry(d.tail(*x)).or_default() += 1;
        }
    }
    let sums = r.angle_sums();
    let mut vertices = BTreeMap::new();
    for v in r.vertices() {
        let chi = darts.get(&v).copied().unwrap_or(0) - corners.get(&v).copied().unwrap_or(0);
        let k = Angle::from_integer(2) - sums.get(&v).copied().unwrap_or_else(Angle::zero) - Angle::from_integer(chi);
        vertices.insert(v, k);
    }
    let total = faces.iter().sum::<Angle>() + vertices.values().sum::<Angle>();
    Curvature { vertices, faces, total }
}

pub fn gauss_bonnet_check(r: &RectifiedDiagram) -> bool {
    curvature(r).total == Angle::from_integer(2)
}
