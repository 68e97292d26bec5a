//! Disc diagrams over a cubical presentation.
//!
//! A diagram is stored as a planar map. Edges carry the orientation of their
//! image edge in `X`. Inner faces list their darts as closed cycles and the
//! boundary path is traversed in the same rotational sense, so the darts of
//! the inner faces together with the reverses of the boundary darts use every
//! dart exactly once. The outer face is the cycle of reversed boundary darts.

use std::collections::{BTreeMap, HashMap};

use cubsc_core::{CubeComplex, CubeRef, CubicalPresentation, Dart};
use serde::{Deserialize, Serialize};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("face {0} is not a closed dart cycle")]
    OpenFace(usize),
    #[error("boundary path is not closed")]
    OpenBoundary,
    #[error("dart {dart:?} is used {count} times")]
    DartUse { dart: Dart, count: usize },
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("vertex {0} has a pinched link")]
    Pinched(usize),
    #[error("Euler characteristic is {0}, expected 1")]
    Euler(i64),
    #[error("face {0} does not trace the boundary of its square")]
    SquareImage(usize),
    #[error("face {0} does not match its cone-cell word")]
    ConeWord(usize),
    #[error("edge {0} has endpoints inconsistent with its image")]
    EdgeImage(usize),
    #[error("reference out of range: {0}")]
    Range(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DEdge {
    pub src: usize,
    pub dst: usize,
    /// Image edge in `X`, with the same orientation.
    pub image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Cell {
    Square {
        image: usize,
    },
    /// A cone-cell over relator `relator`; `word` is a closed path in `Y_i`
    /// from `start` whose image is the face boundary.
    Cone {
        relator: usize,
        start: usize,
        word: Vec<Dart>,
    },
}

impl Cell {
    pub fn is_square(&self) -> bool {
        matches!(self, Cell::Square { .. })
    }

    pub fn is_cone(&self) -> bool {
        matches!(self, Cell::Cone { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub cell: Cell,
    pub darts: Vec<Dart>,
}

/// Who uses a dart: an inner face at a position, or the outer face, which uses
/// the reverse of boundary dart `pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    Face { face: usize, pos: usize },
    Outer { pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscDiagram {
    /// Image vertex in `X` of each diagram vertex.
    pub vertices: Vec<usize>,
    pub edges: Vec<DEdge>,
    pub faces: Vec<Face>,
    pub boundary: Vec<Dart>,
    /// Start vertex of the boundary path.
    pub base: usize,
}

/// Lexicographic complexity `(cone-cells, squares)`.
pub type Complexity = (usize, usize);

impl DiscDiagram {
    /// The single-vertex diagram over `v`.
    pub fn point(v: usize) -> DiscDiagram {
        DiscDiagram {
            vertices: vec![v],
            edges: Vec::new(),
            faces: Vec::new(),
            boundary: Vec::new(),
            base: 0,
        }
    }

    pub fn tail(&self, d: Dart) -> usize {
        let e = &self.edges[d.edge];
        if d.rev {
            e.dst
        } else {
            e.src
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        let e = &self.edges[d.edge];
        if d.rev {
            e.src
        } else {
            e.dst
        }
    }

    pub fn image(&self, d: Dart) -> Dart {
        Dart::new(self.edges[d.edge].image, d.rev)
    }

    pub fn boundary_image(&self) -> Vec<Dart> {
        self.boundary.iter().map(|&d| self.image(d)).collect()
    }

    pub fn complexity(&self) -> Complexity {
        let c = self.faces.iter().filter(|f| f.cell.is_cone()).count();
        (c, self.faces.len() - c)
    }

    pub fn cone_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.faces[f].cell.is_cone()).collect()
    }

    pub fn square_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.faces[f].cell.is_square()).collect()
    }

    /// Vertices along the boundary; entry `k` is the tail of boundary dart `k`.
    pub fn boundary_vertices(&self) -> Vec<usize> {
        if self.boundary.is_empty() {
            return vec![self.base];
        }
        self.boundary.iter().map(|&d| self.tail(d)).collect()
    }

    pub fn owners(&self) -> HashMap<Dart, Owner> {
        let mut out = HashMap::new();
        for (f, face) in self.faces.iter().enumerate() {
            for (pos, &d) in face.darts.iter().enumerate() {
                out.insert(d, Owner::Face { face: f, pos });
            }
        }
        for (pos, &d) in self.boundary.iter().enumerate() {
            out.insert(d.inverse(), Owner::Outer { pos });
        }
        out
    }

    /// Whether the edge of `d` lies on the boundary, seen from the side of `d`.
    pub fn on_boundary(&self, owners: &HashMap<Dart, Owner>, d: Dart) -> bool {
        matches!(owners.get(&d.inverse()), Some(Owner::Outer { .. }))
    }

    /// Checks the planar structure and every cell's image against `p`.
    pub fn validate(&self, p: &CubicalPresentation) -> Result<(), DiagramError> {
        self.validate_topology()?;
        self.validate_images(&p.base, p)
    }

    /// Closed cycles, exact dart usage, connectivity, single-cycle vertex
    /// rotations and Euler characteristic one: together these certify that
    /// gluing in the outer face yields a sphere.
    pub fn validate_topology(&self) -> Result<(), DiagramError> {
        let nv = self.vertices.len();
        if self.base >= nv {
            return Err(DiagramError::Range(format!("base {}", self.base)));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.src >= nv || e.dst >= nv {
                return Err(DiagramError::Range(format!("edge {i}")));
            }
        }
        let ok_dart = |d: &Dart| d.edge < self.edges.len();
        for (f, face) in self.faces.iter().enumerate() {
            if face.darts.is_empty() || !face.darts.iter().all(ok_dart) {
                return Err(DiagramError::OpenFace(f));
            }
            if !self.is_cycle(&face.darts) {
                return Err(DiagramError::OpenFace(f));
            }
        }
        if !self.boundary.iter().all(ok_dart) {
            return Err(DiagramError::OpenBoundary);
        }
        if self.boundary.is_empty() {
            if nv != 1 || !self.edges.is_empty() || !self.faces.is_empty() {
                return Err(DiagramError::Euler(self.euler()));
            }
            return Ok(());
        }
        if !self.is_cycle(&self.boundary) || self.tail(self.boundary[0]) != self.base {
            return Err(DiagramError::OpenBoundary);
        }
        let mut count: HashMap<Dart, usize> = HashMap::new();
        for face in &self.faces {
            for &d in &face.darts {
                *count.entry(d).or_default() += 1;
            }
        }
        for &d in &self.boundary {
            *count.entry(d.inverse()).or_default() += 1;
        }
        for e in 0..self.edges.len() {
            for rev in [false, true] {
                let d = Dart::new(e, rev);
                let c = count.get(&d).copied().unwrap_or(0);
                if c != 1 {
                    return Err(DiagramError::DartUse { dart: d, count: c });
                }
            }
        }
        let mut adj = vec![Vec::new(); nv];
        for e in &self.edges {
            adj[e.src].push(e.dst);
            adj[e.dst].push(e.src);
        }
        if cubsc_core::util::bfs(&adj, 0).iter().any(|&d| d == u32::MAX) {
            return Err(DiagramError::Disconnected);
        }
        let sigma = self.rotation();
        let mut seen = vec![false; 2 * self.edges.len()];
        let mut cycles = vec![0usize; nv];
        for e in 0..self.edges.len() {
            for rev in [false, true] {
                let d = Dart::new(e, rev);
                if seen[dart_index(d)] {
                    continue;
                }
                cycles[self.tail(d)] += 1;
                let mut c = d;
                while !seen[dart_index(c)] {
                    seen[dart_index(c)] = true;
                    c = sigma[&c];
                }
            }
        }
        for (v, &c) in cycles.iter().enumerate() {
            if c > 1 {
                return Err(DiagramError::Pinched(v));
            }
        }
        let chi = self.euler();
        if chi != 1 {
            return Err(DiagramError::Euler(chi));
        }
        Ok(())
    }

    fn validate_images(&self, x: &CubeComplex, p: &CubicalPresentation) -> Result<(), DiagramError> {
        for (i, e) in self.edges.iter().enumerate() {
            if e.image >= x.edge_count()
                || x.source(e.image) != self.vertices[e.src]
                || x.target(e.image) != self.vertices[e.dst]
            {
                return Err(DiagramError::EdgeImage(i));
            }
        }
        for (f, face) in self.faces.iter().enumerate() {
            let imgs: Vec<Dart> = face.darts.iter().map(|&d| self.image(d)).collect();
            match &face.cell {
                Cell::Square { image } => {
                    if *image >= x.square_count() || !traces_square(x, *image, &imgs) {
                        return Err(DiagramError::SquareImage(f));
                    }
                }
                Cell::Cone { relator, start, word } => {
                    let Some(r) = p.relators.get(*relator) else {
                        return Err(DiagramError::ConeWord(f));
                    };
                    let y = r.complex();
                    if *start >= y.vertex_count() || word.len() != imgs.len() {
                        return Err(DiagramError::ConeWord(f));
                    }
                    let mut v = *start;
                    for (k, &d) in word.iter().enumerate() {
                        if d.edge >= y.edge_count() || y.tail(d) != v || r.map.dart(d) != imgs[k] {
                            return Err(DiagramError::ConeWord(f));
                        }
                        v = y.head(d);
                    }
                    if v != *start {
                        return Err(DiagramError::ConeWord(f));
                    }
                }
            }
        }
        Ok(())
    }

    fn is_cycle(&self, darts: &[Dart]) -> bool {
        if darts.is_empty() {
            return false;
        }
        (0..darts.len()).all(|k| self.head(darts[k]) == self.tail(darts[(k + 1) % darts.len()]))
    }

    pub fn euler(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// The rotation at each vertex: `sigma(d)` is the dart leaving `tail(d)`
    /// that follows `d` across the face containing the corner between them.
    pub fn rotation(&self) -> HashMap<Dart, Dart> {
        let mut sigma = HashMap::new();
        let mut add = |cycle: &[Dart]| {
            let n = cycle.len();
            for k in 0..n {
                sigma.insert(cycle[k].inverse(), cycle[(k + 1) % n]);
            }
        };
        for face in &self.faces {
            add(&face.darts);
        }
        let outer: Vec<Dart> = self.boundary.iter().rev().map(|d| d.inverse()).collect();
        if !outer.is_empty() {
            add(&outer);
        }
        sigma
    }

    /// Darts leaving `v` in rotation order, starting from the least one.
    pub fn rotation_at(&self, sigma: &HashMap<Dart, Dart>, v: usize) -> Vec<Dart> {
        let mut start: Option<Dart> = None;
        for (e, ed) in self.edges.iter().enumerate() {
            for (rev, t) in [(false, ed.src), (true, ed.dst)] {
                if t == v {
                    let d = Dart::new(e, rev);
                    if start.map_or(true, |s| d < s) {
                        start = Some(d);
                    }
                }
            }
        }
        let Some(s) = start else { return Vec::new() };
        let mut out = vec![s];
        let mut c = sigma[&s];
        while c != s {
            out.push(c);
            c = sigma[&c];
        }
        out
    }

    /// Canonical text form, invariant under renumbering of vertices, edges and
    /// faces. Darts are numbered by a traversal from the first boundary dart.
    pub fn canonical_form(&self) -> String {
        if self.boundary.is_empty() {
            return format!("point:{}", self.vertices[self.base]);
        }
        let sigma = self.rotation();
        let mut label: HashMap<Dart, usize> = HashMap::new();
        let mut order: Vec<Dart> = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(self.boundary[0]);
        while let Some(d) = queue.pop_front() {
            if label.contains_key(&d) {
                continue;
            }
            label.insert(d, order.len());
            order.push(d);
            queue.push_back(d.inverse());
            queue.push_back(sigma[&d]);
        }
        let mut vlabel: HashMap<usize, usize> = HashMap::new();
        for &d in &order {
            let n = vlabel.len();
            vlabel.entry(self.tail(d)).or_insert(n);
        }
        let mut parts = Vec::new();
        for &d in &order {
            parts.push(format!(
                "{}>{}:{}{}",
                vlabel[&self.tail(d)],
                vlabel[&self.head(d)],
                self.edges[d.edge].image,
                if d.rev { "-" } else { "+" }
            ));
        }
        let mut faces: Vec<String> = self
            .faces
            .iter()
            .map(|f| {
                let ls: Vec<usize> = f.darts.iter().map(|d| label[d]).collect();
                let k = (0..ls.len()).min_by_key(|&i| ls[i]).unwrap_or(0);
                let rotated: Vec<String> = (0..ls.len()).map(|i| ls[(k + i) % ls.len()].to_string()).collect();
                let kind = match &f.cell {
                    Cell::Square { image } => format!("s{image}"),
                    Cell::Cone { relator, .. } => format!("c{relator}"),
                };
                format!("{kind}[{}]", rotated.join(","))
            })
            .collect();
        faces.sort();
        let bd: Vec<String> = self.boundary.iter().map(|d| label[d].to_string()).collect();
        format!("darts {} | faces {} | boundary {}", parts.join(" "), faces.join(" "), bd.join(","))
    }

    /// Removes unused vertices and edges and renumbers densely. Darts of the
    /// faces and boundary are rewritten accordingly.
    pub fn compact(&mut self) {
        let mut used_e = vec![false; self.edges.len()];
        for f in &self.faces {
            for d in &f.darts {
                used_e[d.edge] = true;
            }
        }
        for d in &self.boundary {
            used_e[d.edge] = true;
        }
        let mut used_v = vec![false; self.vertices.len()];
        used_v[self.base] = true;
        for (e, ed) in self.edges.iter().enumerate() {
            if used_e[e] {
                used_v[ed.src] = true;
                used_v[ed.dst] = true;
            }
        }
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut verts = Vec::new();
        for v in 0..self.vertices.len() {
            if used_v[v] {
                vmap[v] = verts.len();
                verts.push(self.vertices[v]);
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (e, ed) in self.edges.iter().enumerate() {
            if used_e[e] {
                emap[e] = edges.len();
                edges.push(DEdge {
                    src: vmap[ed.src],
                    dst: vmap[ed.dst],
                    image: ed.image,
                });
            }
        }
        let fix = |d: &Dart| Dart::new(emap[d.edge], d.rev);
        for f in &mut self.faces {
            f.darts = f.darts.iter().map(fix).collect();
        }
        self.boundary = self.boundary.iter().map(fix).collect();
        self.base = vmap[self.base];
        self.vertices = verts;
        self.edges = edges;
    }

    /// Traces every dual curve through squares. Curves that end are listed
    /// first, each from the end with the smaller dart; closed curves follow.
    pub fn dual_curves(&self) -> Vec<DualCurve> {
        let owners = self.owners();
        let is_square_owned = |d: &Dart| match owners.get(d) {
            Some(Owner::Face { face, .. }) => self.faces[*face].cell.is_square(),
            _ => false,
        };
        let mut square_seen: Vec<[bool; 2]> = vec![[false; 2]; self.faces.len()];
        let mut curves = Vec::new();
        let mut end_seen: HashMap<Dart, bool> = HashMap::new();
        let mut starts: Vec<Dart> = owners.keys().copied().filter(|d| !is_square_owned(d)).collect();
        starts.sort();
        for s in starts {
            if end_seen.contains_key(&s) {
                continue;
            }
            // cross the edge from the side owned by `s`
            let mut squares = Vec::new();
            let mut d = s.inverse();
            loop {
                match owners.get(&d) {
                    Some(Owner::Face { face, pos }) if self.faces[*face].cell.is_square() => {
                        squares.push((*face, pos % 2));
                        square_seen[*face][pos % 2] = true;
                        let opp = self.faces[*face].darts[(pos + 2) % 4];
                        d = opp.inverse();
                    }
                    _ => break,
                }
            }
            end_seen.insert(s, true);
            end_seen.insert(d, true);
            curves.push(DualCurve {
                ends: Some((s, d)),
                squares,
            });
        }
        for f in 0..self.faces.len() {
            if !self.faces[f].cell.is_square() {
                continue;
            }
            for par in 0..2 {
                if square_seen[f][par] {
                    continue;
                }
                let mut squares = Vec::new();
                let mut d = self.faces[f].darts[par];
                loop {
                    let Some(Owner::Face { face, pos }) = owners.get(&d).copied() else { break };
                    if square_seen[face][pos % 2] {
                        break;
                    }
                    square_seen[face][pos % 2] = true;
                    squares.push((face, pos % 2));
                    d = self.faces[face].darts[(pos + 2) % 4].inverse();
                }
                curves.push(DualCurve { ends: None, squares });
            }
        }
        curves
    }
}

/// A dual curve: the squares it passes through (face, parity of the crossed
/// dart positions) and, unless closed, its two end darts. Each end dart is
/// owned by the outer face or a cone-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCurve {
    pub ends: Option<(Dart, Dart)>,
    pub squares: Vec<(usize, usize)>,
}

impl DualCurve {
    pub fn crosses(&self, other: &DualCurve) -> bool {
        self.squares
            .iter()
            .any(|(f, p)| other.squares.iter().any(|(g, q)| f == g && p != q))
    }

    pub fn self_crosses(&self) -> bool {
        self.crosses(self)
    }
}

pub(crate) fn dart_index(d: Dart) -> usize {
    2 * d.edge + d.rev as usize
}

/// The boundary cycle of square `s` read from corner `bits` along `first`
/// then the other axis.
pub fn square_cycle(x: &CubeComplex, s: usize, bits: u32, first: usize) -> Vec<Dart> {
    let c = CubeRef { dim: 2, index: s };
    let second = 1 - first;
    let b1 = bits ^ (1 << first);
    let b2 = b1 ^ (1 << second);
    let b3 = b2 ^ (1 << first);
    vec![
        x.corner_dart(c, bits, first),
        x.corner_dart(c, b1, second),
        x.corner_dart(c, b2, first),
        x.corner_dart(c, b3, second),
    ]
}

/// Whether `imgs` reads the boundary of square `s` from some corner in some
/// direction.
pub fn traces_square(x: &CubeComplex, s: usize, imgs: &[Dart]) -> bool {
    if imgs.len() != 4 {
        return false;
    }
    (0..4u32).any(|bits| (0..2).any(|first| square_cycle(x, s, bits, first) == imgs))
}

/// Incremental construction by explicit cells; `build` validates.
#[derive(Clone, Debug, Default)]
pub struct DiagramBuilder {
    vertices: Vec<usize>,
    edges: Vec<DEdge>,
    faces: Vec<Face>,
}

impl DiagramBuilder {
    pub fn new() -> DiagramBuilder {
        DiagramBuilder::default()
    }

    pub fn vertex(&mut self, image: usize) -> usize {
        self.vertices.push(image);
        self.vertices.len() - 1
    }

    /// An edge over `image` from `src` to `dst`.
    pub fn edge(&mut self, src: usize, dst: usize, image: usize) -> usize {
        self.edges.push(DEdge { src, dst, image });
        self.edges.len() - 1
    }

    pub fn face(&mut self, cell: Cell, darts: Vec<Dart>) -> usize {
        self.faces.push(Face { cell, darts });
        self.faces.len() - 1
    }

    pub fn vertex_image(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn edge_data(&self, e: usize) -> DEdge {
        self.edges[e]
    }

    /// Finishes with the given boundary, checking topology only.
    pub fn build_unchecked(self, boundary: Vec<Dart>, base: usize) -> DiscDiagram {
        DiscDiagram {
            vertices: self.vertices,
            edges: self.edges,
            faces: self.faces,
            boundary,
            base,
        }
    }

    pub fn build(self, boundary: Vec<Dart>, base: usize, p: &CubicalPresentation) -> Result<DiscDiagram, DiagramError> {
        let d = self.build_unchecked(boundary, base);
        d.validate(p)?;
        Ok(d)
    }
}

/// Counts used by reports.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramSummary {
    pub vertices: usize,
    pub edges: usize,
    pub cone_cells: usize,
    pub squares: usize,
    pub boundary_length: usize,
}

impl DiscDiagram {
    pub fn summary(&self) -> DiagramSummary {
        let (c, s) = self.complexity();
        DiagramSummary {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            cone_cells: c,
            squares: s,
            boundary_length: self.boundary.len(),
        }
    }

    /// Number of edges of each face, keyed by cell kind.
    pub fn face_sizes(&self) -> BTreeMap<String, Vec<usize>> {
        let mut out: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for f in &self.faces {
            let k = if f.cell.is_square() { "square" } else { "cone" };
            out.entry(k.to_string()).or_default().push(f.darts.len());
        }
        out
    }
}

impl DiscDiagram {
    /// The subdiagram enclosed by the closed path `cycle`, traversed in the
    /// boundary sense. `None` when `cycle` does not bound a disc of `self`.
    pub fn subdiagram(&self, cycle: &[Dart]) -> Option<DiscDiagram> {
        if cycle.is_empty() || !self.is_cycle(cycle) {
            return None;
        }
        let owners = self.owners();
        let on_cycle: std::collections::HashSet<Dart> = cycle.iter().copied().collect();
        let cut: std::collections::HashSet<usize> = cycle.iter().map(|d| d.edge).collect();
        let mut inside = vec![false; self.faces.len()];
        let mut stack = Vec::new();
        for &x in cycle {
            if on_cycle.contains(&x.inverse()) {
                continue;
            }
            match owners.get(&x) {
                Some(Owner::Face { face, .. }) => {
                    if !inside[*face] {
                        inside[*face] = true;
                        stack.push(*face);
                    }
                }
                _ => return None,
            }
        }
        while let Some(f) = stack.pop() {
            for &y in &self.faces[f].darts {
                if cut.contains(&y.edge) {
                    continue;
                }
                match owners.get(&y.inverse()) {
                    Some(Owner::Face { face, .. }) => {
                        if !inside[*face] {
                            inside[*face] = true;
                            stack.push(*face);
                        }
                    }
                    _ => return None,
                }
            }
        }
        let mut vmap: HashMap<usize, usize> = HashMap::new();
        let mut emap: HashMap<usize, usize> = HashMap::new();
        let mut b = DiagramBuilder::new();
        let mut map_dart = |x: Dart, b: &mut DiagramBuilder| {
            let e = *emap.entry(x.edge).or_insert_with(|| {
                let ed = self.edges[x.edge];
                let s = *vmap.entry(ed.src).or_insert_with(|| b.vertex(self.vertices[ed.src]));
                let t = *vmap.entry(ed.dst).or_insert_with(|| b.vertex(self.vertices[ed.dst]));
                b.edge(s, t, ed.image)
            });
            Dart::new(e, x.rev)
        };
        let boundary: Vec<Dart> = cycle.iter().map(|&x| map_dart(x, &mut b)).collect();
        for (f, face) in self.faces.iter().enumerate() {
            if inside[f] {
                let darts = face.darts.iter().map(|&x| map_dart(x, &mut b)).collect();
                b.face(face.cell.clone(), darts);
            }
        }
        let base = vmap[&self.tail(cycle[0])];
        let d = b.build_unchecked(boundary, base);
        d.validate_topology().ok()?;
        Some(d)
    }
}
