//! Classification of geodesic triangles into the nine standard types.
//!
//! Given sides `alpha` (x to y), `beta` (y to z) and `gamma` (z to x), a
//! minimal diagram for `alpha beta gamma` is searched and its sides are
//! square-homotoped: a square with two consecutive boundary edges on one side
//! is pushed off, replacing those edges by the other two. The diagram is
//! then checked against the expected structure:
//!
//! - a trivial side: the diagram is a vertex, a cone-cell or a ladder;
//! - a cone-cell meeting all three sides (the median cell `M`): the generic
//!   case, where the three subdiagrams spanned by `M` and each corner are
//!   ladders;
//! - otherwise the tripod case: the innermost cone-cell at each corner cuts
//!   off a padded ladder and what remains is a square diagram whose dual
//!   curves never join one syllable of its boundary to itself or to the next
//!   syllable, and never cross when they start on the same syllable.
//!
//! The label counts the corners at which one cone-cell owns both boundary
//! edges. A cone-cell is said to meet a side when one of its vertices lies on
//! that side. Any mismatch is a [`ClassifyError::StructureViolation`], which
//! carries the diagram.

use std::cell::OnceCell;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use cubsc_core::util::bfs;
use cubsc_core::{CubicalPresentation, Dart, Path};
use serde::Serialize;

use crate::cayley::CayleyBall;
use crate::diagram::{DiscDiagram, Owner};
use crate::ladder::{is_ladder, is_padded_ladder, PaddedLadder};
use crate::rewrite::RelatorTables;
use crate::search::{find_diagram_with, SearchBudget, SearchError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TriangleLabel {
    #[serde(rename = "3-shell generic")]
    ThreeShellGeneric,
    #[serde(rename = "3-shell tripod")]
    ThreeShellTripod,
    #[serde(rename = "2-shell generic")]
    TwoShellGeneric,
    #[serde(rename = "2-shell tripod")]
    TwoShellTripod,
    #[serde(rename = "1-shell generic")]
    OneShellGeneric,
    #[serde(rename = "1-shell tripod")]
    OneShellTripod,
    #[serde(rename = "no-shell generic")]
    NoShellGeneric,
    #[serde(rename = "no-shell tripod")]
    NoShellTripod,
    #[serde(rename = "degenerate")]
    Degenerate,
}

impl TriangleLabel {
    pub const ALL: [TriangleLabel; 9] = [
        TriangleLabel::ThreeShellGeneric,
        TriangleLabel::ThreeShellTripod,
        TriangleLabel::TwoShellGeneric,
        TriangleLabel::TwoShellTripod,
        TriangleLabel::OneShellGeneric,
        TriangleLabel::OneShellTripod,
        TriangleLabel::NoShellGeneric,
        TriangleLabel::NoShellTripod,
        TriangleLabel::Degenerate,
    ];

    pub fn new(shells: usize, generic: bool) -> TriangleLabel {
        use TriangleLabel::*;
        match (shells, generic) {
            (3, true) => ThreeShellGeneric,
            (3, false) => ThreeShellTripod,
            (2, true) => TwoShellGeneric,
            (2, false) => TwoShellTripod,
            (1, true) => OneShellGeneric,
            (1, false) => OneShellTripod,
            (_, true) => NoShellGeneric,
            (_, false) => NoShellTripod,
        }
    }

    pub fn shells(self) -> Option<usize> {
        use TriangleLabel::*;
        match self {
            ThreeShellGeneric | ThreeShellTripod => Some(3),
            TwoShellGeneric | TwoShellTripod => Some(2),
            OneShellGeneric | OneShellTripod => Some(1),
            NoShellGeneric | NoShellTripod => Some(0),
            Degenerate => None,
        }
    }

    pub fn is_generic(self) -> bool {
        use TriangleLabel::*;
        matches!(self, ThreeShellGeneric | TwoShellGeneric | OneShellGeneric | NoShellGeneric)
    }
}

impl fmt::Display for TriangleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("label serializes");
        f.write_str(s.as_str().expect("label is a string"))
    }
}

/// What the diagram looks like at a corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CornerKind {
    Spur,
    ExposedSquare,
    Shell,
    Flat,
}

/// The squares pushed off one side.
#[derive(Clone, Debug, Serialize)]
pub struct Bigon {
    /// 0, 1, 2 for alpha, beta, gamma.
    pub side: usize,
    pub original: Vec<Dart>,
    pub adjusted: Vec<Dart>,
    pub squares: usize,
    /// The square diagram between the two paths.
    pub diagram: Option<DiscDiagram>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedLadder {
    /// The corner it contains: 0, 1, 2 for y, z, x.
    pub corner: usize,
    pub diagram: DiscDiagram,
    pub ladder: PaddedLadder,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripodPoint {
    /// Diagram vertex, when a diagram was built.
    pub vertex: Option<usize>,
    /// A base path from `x` to the point.
    pub path: Vec<Dart>,
    /// Ball vertex, when classified inside a ball.
    pub ball_vertex: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleClassification {
    pub label: TriangleLabel,
    /// At y, z, x.
    pub corners: Option<[CornerKind; 3]>,
    /// Adjusted sides.
    pub sides: [Path; 3],
    pub bigons: Vec<Bigon>,
    pub diagram: Option<DiscDiagram>,
    pub median_cell: Option<usize>,
    pub tripod_point: Option<TripodPoint>,
    pub ladders: Vec<ClassifiedLadder>,
    pub internal_cone_cells: usize,
}

#[derive(thiserror::Error, Debug)]
pub enum ClassifyError {
    #[error("sides do not form a closed triangle")]
    NotATriangle,
    #[error("vertex {0} is not in the ball")]
    NotInBall(usize),
    #[error("no diagram exists for the triangle")]
    NoDiagram,
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("structure violation: {reason}")]
    StructureViolation { reason: String, diagram: Box<DiscDiagram> },
}

fn violation(reason: impl Into<String>, d: &DiscDiagram) -> ClassifyError {
    ClassifyError::StructureViolation {
        reason: reason.into(),
        diagram: Box::new(d.clone()),
    }
}

/// Classifies triangles with corners in a ball. Distances are cached per
/// source vertex.
pub struct Classifier<'a> {
    p: &'a CubicalPresentation,
    ball: &'a CayleyBall,
    tables: RelatorTables,
    budget: SearchBudget,
    graph: Vec<Vec<usize>>,
    rows: Vec<OnceCell<Vec<u32>>>,
}

impl<'a> Classifier<'a> {
    pub fn new(p: &'a CubicalPresentation, ball: &'a CayleyBall, budget: SearchBudget) -> Classifier<'a> {
        let graph = ball.graph();
        let rows = (0..graph.len()).map(|_| OnceCell::new()).collect();
        Classifier {
            p,
            ball,
            tables: RelatorTables::new(p),
            budget,
            graph,
            rows,
        }
    }

    pub fn dist(&self, a: usize, b: usize) -> u32 {
        self.rows[a].get_or_init(|| bfs(&self.graph, a))[b]
    }

    /// A geodesic from `a` to `b`, least germ first at each step.
    fn geodesic(&self, a: usize, b: usize) -> Option<Vec<Dart>> {
        if self.dist(a, b) == u32::MAX {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = a;
        while cur != b {
            let &(g, w) = self.ball.neighbors(cur).iter().find(|(_, w)| self.dist(*w, b) + 1 == self.dist(cur, b))?;
            out.push(g);
            cur = w;
        }
        Some(out)
    }

    /// Least total distance to the corners, reached by descent from `x`. In
    /// a median graph the local minimum is the median.
    fn descend(&self, x: usize, y: usize, z: usize) -> usize {
        let total = |v: usize| self.dist(v, x) as u64 + self.dist(v, y) as u64 + self.dist(v, z) as u64;
        let mut cur = x;
        loop {
            let best = self.graph[cur].iter().copied().min_by_key(|&w| (total(w), w));
            match best {
                Some(w) if total(w) < total(cur) => cur = w,
                _ => return cur,
            }
        }
    }

    pub fn classify(&self, x: usize, y: usize, z: usize) -> Result<TriangleClassification, ClassifyError> {
        let n = self.ball.vertex_count();
        for v in [x, y, z] {
            if v >= n {
                return Err(ClassifyError::NotInBall(v));
            }
        }
        let base = self.ball.project_vertex(x);
        if self.p.relators.is_empty() && x != y && y != z && z != x {
            return self.cube_tripod(x, y, z);
        }
        let g = |a, b| self.geodesic(a, b).ok_or(ClassifyError::NotATriangle);
        let sides = [
            Path::new(base, g(x, y)?),
            Path::new(self.ball.project_vertex(y), g(y, z)?),
            Path::new(self.ball.project_vertex(z), g(z, x)?),
        ];
        let mut out = classify_with(self.p, &self.tables, &sides, &self.budget)?;
        if let Some(tp) = out.tripod_point.as_mut() {
            tp.ball_vertex = self.ball.walk(x, &tp.path);
        }
        Ok(out)
    }

    /// Without relators the diagram has no cone-cells: the sides are routed
    /// through the point of least total distance, and the diagram is the
    /// tripod tree on those three arms.
    fn cube_tripod(&self, x: usize, y: usize, z: usize) -> Result<TriangleClassification, ClassifyError> {
        let m = self.descend(x, y, z);
        let d = |a, b| self.dist(a, b);
        let empty = DiscDiagram::point(0);
        for (a, b) in [(x, y), (y, z), (z, x)] {
            if d(a, m) + d(m, b) != d(a, b) {
                return Err(violation("least-total point is off a side interval", &empty));
            }
        }
        let leg = |a, b| self.geodesic(a, b).ok_or(ClassifyError::NotATriangle);
        let (xm, my, ym, mz, zm, mx) = (leg(x, m)?, leg(m, y)?, leg(y, m)?, leg(m, z)?, leg(z, m)?, leg(m, x)?);
        let cat = |a: &[Dart], b: &[Dart]| a.iter().chain(b).copied().collect::<Vec<_>>();
        let pv = |v| self.ball.project_vertex(v);
        Ok(TriangleClassification {
            label: TriangleLabel::NoShellTripod,
            corners: None,
            sides: [Path::new(pv(x), cat(&xm, &my)), Path::new(pv(y), cat(&ym, &mz)), Path::new(pv(z), cat(&zm, &mx))],
            bigons: Vec::new(),
            diagram: None,
            median_cell: None,
            tripod_point: Some(TripodPoint {
                vertex: None,
                path: xm,
                ball_vertex: Some(m),
            }),
            ladders: Vec::new(),
            internal_cone_cells: 0,
        })
    }
}

pub fn classify_triangle(
    p: &CubicalPresentation,
    ball: &CayleyBall,
    x: usize,
    y: usize,
    z: usize,
    budget: &SearchBudget,
) -> Result<TriangleClassification, ClassifyError> {
    Classifier::new(p, ball, *budget).classify(x, y, z)
}

/// Classifies the triangle with the given sides, which the caller vouches
/// are geodesics.
pub fn classify_sides(p: &CubicalPresentation, sides: &[Path; 3], budget: &SearchBudget) -> Result<TriangleClassification, ClassifyError> {
    classify_with(p, &RelatorTables::new(p), sides, budget)
}

fn classify_with(
    p: &CubicalPresentation,
    tables: &RelatorTables,
    sides: &[Path; 3],
    budget: &SearchBudget,
) -> Result<TriangleClassification, ClassifyError> {
    let x = &p.base;
    for i in 0..3 {
        if sides[i].end(x) != sides[(i + 1) % 3].start {
            return Err(ClassifyError::NotATriangle);
        }
    }
    let lens = [sides[0].len(), sides[1].len(), sides[2].len()];
    let w = sides[0].concat(&sides[1]).concat(&sides[2]);
    let d0 = match find_diagram_with(p, tables, &w, budget)? {
        Some(d) => d,
        None => return Err(ClassifyError::NoDiagram),
    };
    if d0.boundary.len() != w.len() {
        return Err(violation("diagram boundary does not match the triangle", &d0));
    }
    let (d, bigons) = push_squares(&d0, lens);
    let adjusted = {
        let img = d.boundary_image();
        let mut out = Vec::new();
        let mut at = 0;
        for (i, &l) in lens.iter().enumerate() {
            out.push(Path::new(sides[i].start, img[at..at + l].to_vec()));
            at += l;
        }
        [out[0].clone(), out[1].clone(), out[2].clone()]
    };
    Tri::new(d, lens).classify(adjusted, bigons)
}

/// Pushes squares with two consecutive boundary edges on one side out of
/// the diagram.
fn push_squares(d0: &DiscDiagram, lens: [usize; 3]) -> (DiscDiagram, Vec<Bigon>) {
    let owners = d0.owners();
    let total: usize = lens.iter().sum();
    let side_of = |k: usize| {
        if k < lens[0] {
            0
        } else if k < lens[0] + lens[1] {
            1
        } else {
            2
        }
    };
    let mut cur = d0.boundary.clone();
    let mut removed: HashSet<usize> = HashSet::new();
    let mut per_side = [0usize; 3];
    loop {
        let mut hit = None;
        for k in 0..total.saturating_sub(1) {
            if side_of(k) != side_of(k + 1) {
                continue;
            }
            let (a, b) = (cur[k], cur[k + 1]);
            if let (Some(Owner::Face { face: f, pos: i }), Some(Owner::Face { face: g, pos: j })) = (owners.get(&a), owners.get(&b)) {
                if f == g && d0.faces[*f].cell.is_square() && !removed.contains(f) && (i + 1) % 4 == *j {
                    hit = Some((k, *f, *i));
                    break;
                }
            }
        }
        let Some((k, f, i)) = hit else { break };
        let darts = &d0.faces[f].darts;
        let x2 = darts[(i + 2) % 4];
        let x3 = darts[(i + 3) % 4];
        cur[k] = x3.inverse();
        cur[k + 1] = x2.inverse();
        removed.insert(f);
        per_side[side_of(k)] += 1;
    }
    if removed.is_empty() {
        return (d0.clone(), Vec::new());
    }
    let mut bigons = Vec::new();
    let mut at = 0;
    for (s, &l) in lens.iter().enumerate() {
        if per_side[s] > 0 {
            let orig = &d0.boundary[at..at + l];
            let adj = &cur[at..at + l];
            let mut cycle = orig.to_vec();
            cycle.extend(adj.iter().rev().map(|x| x.inverse()));
            bigons.push(Bigon {
                side: s,
                original: orig.iter().map(|&x| d0.image(x)).collect(),
                adjusted: adj.iter().map(|&x| d0.image(x)).collect(),
                squares: per_side[s],
                diagram: d0.subdiagram(&cycle),
            });
        }
        at += l;
    }
    match d0.subdiagram(&cur) {
        Some(d) => (d, bigons),
        // the pushed boundary pinches; keep the original diagram
        None => (d0.clone(), Vec::new()),
    }
}

struct Tri {
    d: DiscDiagram,
    owners: HashMap<Dart, Owner>,
    lens: [usize; 3],
    total: usize,
}

impl Tri {
    fn new(d: DiscDiagram, lens: [usize; 3]) -> Tri {
        let owners = d.owners();
        Tri {
            total: lens.iter().sum(),
            d,
            owners,
            lens,
        }
    }

    fn vertex_at(&self, k: usize) -> usize {
        if self.total == 0 {
            self.d.base
        } else {
            self.d.tail(self.d.boundary[k % self.total])
        }
    }

    /// Vertex positions of a side, inclusive.
    fn range(&self, s: usize) -> (usize, usize) {
        let a = self.lens[0];
        let b = a + self.lens[1];
        match s {
            0 => (0, a),
            1 => (a, b),
            _ => (b, self.total),
        }
    }

    /// Corner positions of y, z, x.
    fn corner(&self, c: usize) -> usize {
        match c {
            0 => self.lens[0],
            1 => self.lens[0] + self.lens[1],
            _ => self.total,
        }
    }

    fn contacts(&self, verts: &HashSet<usize>, s: usize) -> Vec<usize> {
        let (lo, hi) = self.range(s);
        (lo..=hi).filter(|&k| verts.contains(&self.vertex_at(k))).collect()
    }

    fn face_vertices(&self, f: usize) -> HashSet<usize> {
        self.d.faces[f].darts.iter().map(|&x| self.d.tail(x)).collect()
    }

    /// The ladder at x runs from gamma across to alpha.
    fn unwrap_end(&self, corner: usize, e: usize) -> usize {
        if corner == 2 {
            e + self.total
        } else {
            e
        }
    }

    /// Boundary darts from position `s` to position `e`, cyclically.
    fn segment(&self, s: usize, e: usize) -> Option<Vec<Dart>> {
        if e < s {
            return None;
        }
        Some((s..e).map(|k| self.d.boundary[k % self.total]).collect())
    }

    /// Face darts of `f` from vertex `a` forward to vertex `b`; the whole
    /// cycle when they are the same vertex.
    fn arc(&self, f: usize, a: usize, b: usize) -> Option<Vec<Dart>> {
        let darts = &self.d.faces[f].darts;
        let m = darts.len();
        let i = (0..m).find(|&j| self.d.tail(darts[j]) == a)?;
        let j = (0..m).find(|&j| self.d.tail(darts[j]) == b)?;
        let len = if i == j { m } else { (j + m - i) % m };
        Some((0..len).map(|t| darts[(i + t) % m]).collect())
    }

    fn corner_kind(&self, c: usize) -> CornerKind {
        let k = self.corner(c);
        let din = self.d.boundary[(k + self.total - 1) % self.total];
        let dout = self.d.boundary[k % self.total];
        if dout == din.inverse() {
            return CornerKind::Spur;
        }
        match (self.owners.get(&din), self.owners.get(&dout)) {
            (Some(Owner::Face { face: f, pos: i }), Some(Owner::Face { face: g, pos: j })) if f == g => {
                let m = self.d.faces[*f].darts.len();
                if self.d.faces[*f].cell.is_cone() {
                    CornerKind::Shell
                } else if (i + 1) % m == *j {
                    CornerKind::ExposedSquare
                } else {
                    CornerKind::Flat
                }
            }
            _ => CornerKind::Flat,
        }
    }

    fn sub(&self, cycle: &[Dart], what: &str) -> Result<DiscDiagram, ClassifyError> {
        if cycle.is_empty() {
            return Ok(DiscDiagram::point(self.d.vertices.first().copied().unwrap_or(0)));
        }
        self.d
            .subdiagram(cycle)
            .ok_or_else(|| violation(format!("{what} does not bound a subdiagram"), &self.d))
    }

    fn classify(self, sides: [Path; 3], bigons: Vec<Bigon>) -> Result<TriangleClassification, ClassifyError> {
        let d = &self.d;
        let cones = d.cone_faces();
        let internal = cones
            .iter()
            .filter(|&&f| d.faces[f].darts.iter().all(|&x| !d.on_boundary(&self.owners, x)))
            .count();
        let mut out = TriangleClassification {
            label: TriangleLabel::Degenerate,
            corners: None,
            sides,
            bigons,
            diagram: Some(d.clone()),
            median_cell: None,
            tripod_point: None,
            ladders: Vec::new(),
            internal_cone_cells: internal,
        };
        if internal > 0 {
            return Err(violation(format!("{internal} internal cone-cells"), d));
        }

        if self.lens.contains(&0) {
            let single_cone = d.faces.len() == 1 && d.faces[0].cell.is_cone() && d.faces[0].darts.len() == d.boundary.len();
            if d.edges.is_empty() || single_cone {
                return Ok(out);
            }
            return match is_ladder(d) {
                Some(l) => {
                    out.ladders.push(ClassifiedLadder {
                        corner: 0,
                        diagram: d.clone(),
                        ladder: l,
                    });
                    Ok(out)
                }
                None => Err(violation("trivial side but the diagram is not a ladder", d)),
            };
        }

        let corners = [self.corner_kind(0), self.corner_kind(1), self.corner_kind(2)];
        let shells = corners.iter().filter(|&&c| c == CornerKind::Shell).count();
        out.corners = Some(corners);

        // sides met by each cone-cell
        let mut meets: Vec<(usize, [Vec<usize>; 3])> = Vec::new();
        for &f in &cones {
            let vs = self.face_vertices(f);
            let c = [self.contacts(&vs, 0), self.contacts(&vs, 1), self.contacts(&vs, 2)];
            let k = c.iter().filter(|v| !v.is_empty()).count();
            if k < 2 {
                return Err(violation(format!("cone-cell {f} meets {k} sides"), d));
            }
            meets.push((f, c));
        }
        let medians: Vec<usize> = meets.iter().filter(|(_, c)| c.iter().all(|v| !v.is_empty())).map(|(f, _)| *f).collect();
        if medians.len() > 1 {
            return Err(violation(format!("{} cone-cells meet all three sides", medians.len()), d));
        }

        if let Some(&m) = medians.first() {
            let c = &meets.iter().find(|(f, _)| *f == m).expect("median listed").1;
            let mut faces = 0;
            for corner in 0..3 {
                let (sin, sout) = (corner, (corner + 1) % 3);
                let s = *c[sin].iter().max().expect("meets side");
                let e = *c[sout].iter().min().expect("meets side");
                let mut cycle = self.segment(s, self.unwrap_end(corner, e)).ok_or_else(|| violation("median cell contacts out of order", d))?;
                cycle.extend(self.arc(m, self.vertex_at(e), self.vertex_at(s)).ok_or_else(|| violation("median arc", d))?);
                let sub = self.sub(&cycle, "ladder")?;
                let l = is_ladder(&sub).ok_or_else(|| violation(format!("subdiagram at corner {corner} is not a ladder"), d))?;
                faces += sub.faces.len();
                out.ladders.push(ClassifiedLadder {
                    corner,
                    diagram: sub,
                    ladder: l,
                });
            }
            if faces != d.faces.len() + 2 {
                return Err(violation("ladders do not cover the diagram", d));
            }
            out.label = TriangleLabel::new(shells, true);
            out.median_cell = Some(m);
            return Ok(out);
        }

        // tripod: the innermost cone-cell at each corner
        let mut cut: [Option<(usize, usize, usize)>; 3] = [None; 3];
        for (f, c) in &meets {
            let corner = match (c[0].is_empty(), c[1].is_empty(), c[2].is_empty()) {
                (false, false, true) => 0,
                (true, false, false) => 1,
                (false, true, false) => 2,
                _ => unreachable!("two sides met"),
            };
            let (sin, sout) = (corner, (corner + 1) % 3);
            let s = *c[sin].iter().min().expect("meets side");
            let e = *c[sout].iter().max().expect("meets side");
            if cut[corner].map_or(true, |(_, s0, _)| s < s0) {
                cut[corner] = Some((*f, s, e));
            }
        }
        let mut arcs: [Vec<Dart>; 3] = Default::default();
        let mut ends = [(0usize, 0usize); 3];
        let mut faces = 0;
        for corner in 0..3 {
            match cut[corner] {
                Some((f, s, e)) => {
                    let arc = self.arc(f, self.vertex_at(e), self.vertex_at(s)).ok_or_else(|| violation("cone arc", d))?;
                    let mut cycle = self
                        .segment(s, self.unwrap_end(corner, e))
                        .ok_or_else(|| violation("cone-cell contacts out of order", d))?;
                    cycle.extend(&arc);
                    let sub = self.sub(&cycle, "padded ladder")?;
                    let l = is_padded_ladder(&sub)
                        .ok_or_else(|| violation(format!("subdiagram at corner {corner} is not a padded ladder"), d))?;
                    faces += sub.faces.len();
                    out.ladders.push(ClassifiedLadder {
                        corner,
                        diagram: sub,
                        ladder: l,
                    });
                    arcs[corner] = arc;
                    ends[corner] = (s, e);
                }
                None => {
                    let k = self.corner(corner);
                    ends[corner] = (k, k % self.total);
                }
            }
        }
        // T: beta part, P_z^-1, gamma part, P_x^-1, alpha part, P_y^-1
        let inv = |p: &[Dart]| p.iter().rev().map(|x| x.inverse()).collect::<Vec<_>>();
        let parts = [
            self.segment(ends[0].1, ends[1].0),
            Some(inv(&arcs[1])),
            self.segment(ends[1].1, ends[2].0),
            Some(inv(&arcs[2])),
            self.segment(ends[2].1, ends[0].0),
            Some(inv(&arcs[0])),
        ];
        let mut cycle = Vec::new();
        let mut syllable = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            let p = p.as_ref().ok_or_else(|| violation("ladders overlap", d))?;
            syllable.extend(std::iter::repeat(i).take(p.len()));
            cycle.extend(p);
        }
        let t = self.sub(&cycle, "tripod triangle")?;
        if !t.cone_faces().is_empty() {
            return Err(violation("tripod triangle has cone-cells", d));
        }
        if faces + t.faces.len() != d.faces.len() {
            return Err(violation("ladders and tripod triangle do not cover the diagram", d));
        }
        check_tripod(&t, &syllable).map_err(|r| violation(r, d))?;

        out.label = TriangleLabel::new(shells, false);
        out.tripod_point = Some(self.tripod_point(&cycle));
        Ok(out)
    }

    /// The vertex of `T` with least total distance in `D` to the corners.
    fn tripod_point(&self, cycle: &[Dart]) -> TripodPoint {
        let d = &self.d;
        let n = d.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for e in &d.edges {
            adj[e.src].push(e.dst);
            adj[e.dst].push(e.src);
        }
        let dists: Vec<Vec<u32>> = [self.corner(2), self.corner(0), self.corner(1)]
            .iter()
            .map(|&k| bfs(&adj, self.vertex_at(k)))
            .collect();
        // vertices of T in D: the tails along its boundary, or its base
        let mut cand: Vec<usize> = cycle.iter().map(|&x| d.tail(x)).collect();
        if cand.is_empty() {
            cand.push(self.vertex_at(self.corner(0)));
        }
        let total = |v: usize| dists.iter().map(|r| r[v] as u64).sum::<u64>();
        let best = cand.iter().copied().min_by_key(|&v| (total(v), v)).expect("nonempty");
        TripodPoint {
            vertex: Some(best),
            path: path_in(d, self.vertex_at(0), best),
            ball_vertex: None,
        }
    }
}

/// Images of a shortest diagram path between two vertices.
fn path_in(d: &DiscDiagram, from: usize, to: usize) -> Vec<Dart> {
    let n = d.vertices.len();
    let mut out_darts: Vec<Vec<Dart>> = vec![Vec::new(); n];
    for (i, e) in d.edges.iter().enumerate() {
        out_darts[e.src].push(Dart::forward(i));
        out_darts[e.dst].push(Dart::new(i, true));
    }
    let mut prev: Vec<Option<Dart>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut q = VecDeque::from([from]);
    while let Some(v) = q.pop_front() {
        for &x in &out_darts[v] {
            let w = d.head(x);
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some(x);
                q.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while let Some(x) = prev[cur] {
        path.push(d.image(x));
        cur = d.tail(x);
    }
    path.reverse();
    path
}

/// Dual curves of the tripod triangle: none returns to its own syllable or
/// reaches the next one, and curves leaving one syllable do not cross.
fn check_tripod(t: &DiscDiagram, syllable: &[usize]) -> Result<(), String> {
    let owners = t.owners();
    let curves = t.dual_curves();
    let end_syllable = |x: Dart| match owners.get(&x) {
        Some(Owner::Outer { pos }) => Some(syllable[*pos]),
        _ => None,
    };
    let mut by_syllable: Vec<Vec<usize>> = vec![Vec::new(); 6];
    for (i, c) in curves.iter().enumerate() {
        let Some((a, b)) = c.ends else {
            return Err("closed dual curve in the tripod triangle".into());
        };
        let (Some(sa), Some(sb)) = (end_syllable(a), end_syllable(b)) else {
            return Err("dual curve ends inside the tripod triangle".into());
        };
        if sa == sb {
            return Err(format!("dual curve returns to syllable {sa}"));
        }
        if (sa + 1) % 6 == sb || (sb + 1) % 6 == sa {
            return Err(format!("dual curve joins consecutive syllables {sa} and {sb}"));
        }
        by_syllable[sa].push(i);
        by_syllable[sb].push(i);
    }
    for group in &by_syllable {
        for (k, &i) in group.iter().enumerate() {
            for &j in &group[k + 1..] {
                if curves[i].crosses(&curves[j]) {
                    return Err("dual curves from one syllable cross".into());
                }
            }
        }
    }
    Ok(())
}
