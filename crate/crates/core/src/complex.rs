//! Finite cube complexes with an explicit face lattice.
//!
//! A `d`-cube stores its `2d` codimension-one faces; face `2k+s` is the
//! subcube where coordinate `k` is fixed to `s`. Faces obey the cubical
//! identity `d[i,s] . d[j,t] = d[j-1,t] . d[i,s]` for `i < j`. Edges are
//! oriented: `d[0,0]` is the source and `d[0,1]` the target.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

/// An oriented edge. Ordered with the forward traversal first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Dart {
    pub edge: usize,
    pub rev: bool,
}

impl Dart {
    pub fn new(edge: usize, rev: bool) -> Dart {
        Dart { edge, rev }
    }

    pub fn forward(edge: usize) -> Dart {
        Dart { edge, rev: false }
    }

    pub fn inverse(self) -> Dart {
        Dart { edge: self.edge, rev: !self.rev }
    }
}

/// A cube referenced by dimension and index within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeRef {
    pub dim: usize,
    pub index: usize,
}

/// A corner of a cube: the vertex with coordinates `bits` (bit `k` is coordinate `k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub cube: CubeRef,
    pub bits: u32,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("inconsistent faces on cube `{cube}`: {detail}")]
    InconsistentFaces { cube: String, detail: String },
    #[error("cube `{cube}` references missing face `{face}`")]
    DanglingReference { cube: String, face: String },
    #[error("cubes `{first}` and `{second}` have identical faces")]
    DuplicateCube { first: String, second: String },
    #[error("duplicate cube id `{0}`")]
    DuplicateId(String),
    #[error("malformed complex: {0}")]
    Malformed(String),
}

/// Finite combinatorial cube complex. Immutable once built.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
    labels: BTreeMap<String, String>,
    index: HashMap<String, CubeRef>,
    out_darts: Vec<Vec<Dart>>,
    corners: Vec<Vec<Corner>>,
}

/// Incremental construction of a complex; `build` validates.
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
    labels: BTreeMap<String, String>,
}

impl ComplexBuilder {
    pub fn new() -> ComplexBuilder {
        ComplexBuilder::default()
    }

    fn ensure_dim(&mut self, d: usize) {
        while self.names.len() <= d {
            self.names.push(Vec::new());
            self.faces.push(Vec::new());
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.ensure_dim(0);
        self.names[0].push(name.into());
        self.faces[0].push(Vec::new());
        self.names[0].len() - 1
    }

    pub fn add_edge(&mut self, name: impl Into<String>, source: usize, target: usize) -> usize {
        self.add_cube(name, vec![source, target])
    }

    /// Adds a cube of dimension `faces.len() / 2`; `faces[2k+s]` indexes the face `d[k,s]`.
    pub fn add_cube(&mut self, name: impl Into<String>, faces: Vec<usize>) -> usize {
        let d = faces.len() / 2;
        self.ensure_dim(d);
        self.names[d].push(name.into());
        self.faces[d].push(faces);
        self.names[d].len() - 1
    }

    pub fn set_label(&mut self, id: impl Into<String>, label: impl Into<String>) {
        self.labels.insert(id.into(), label.into());
    }

    pub fn count(&self, d: usize) -> usize {
        self.names.get(d).map_or(0, |v| v.len())
    }

    pub fn build(self) -> Result<CubeComplex, ComplexError> {
        CubeComplex::from_parts(self.names, self.faces, self.labels)
    }
}

impl CubeComplex {
    pub(crate) fn from_parts(
        mut names: Vec<Vec<String>>,
        mut faces: Vec<Vec<Vec<usize>>>,
        labels: BTreeMap<String, String>,
    ) -> Result<CubeComplex, ComplexError> {
        if names.is_empty() {
            names.push(Vec::new());
            faces.push(Vec::new());
        }
        while names.len() > 1 && names.last().map_or(false, |v| v.is_empty()) {
            names.pop();
            faces.pop();
        }
        let mut index = HashMap::new();
        for (d, row) in names.iter().enumerate() {
            for (i, n) in row.iter().enumerate() {
                if index.insert(n.clone(), CubeRef { dim: d, index: i }).is_some() {
                    return Err(ComplexError::DuplicateId(n.clone()));
                }
            }
        }
        for (d, row) in faces.iter().enumerate() {
            for (i, f) in row.iter().enumerate() {
                if f.len() != 2 * d {
                    return Err(ComplexError::InconsistentFaces {
                        cube: names[d][i].clone(),
                        detail: format!("expected {} faces, found {}", 2 * d, f.len()),
                    });
                }
                if d > 0 {
                    for &g in f {
                        if g >= names[d - 1].len() {
                            return Err(ComplexError::DanglingReference {
                                cube: names[d][i].clone(),
                                face: format!("#{g} in dimension {}", d - 1),
                            });
                        }
                    }
                }
            }
        }
        for d in 2..faces.len() {
            for (c, f) in faces[d].iter().enumerate() {
                for j in 0..d {
                    for i in 0..j {
                        for s in 0..2 {
                            for t in 0..2 {
                                let a = faces[d - 1][f[2 * j + t]][2 * i + s];
                                let b = faces[d - 1][f[2 * i + s]][2 * (j - 1) + t];
                                if a != b {
                                    return Err(ComplexError::InconsistentFaces {
                                        cube: names[d][c].clone(),
                                        detail: format!(
                                            "faces [{i},{s}] and [{j},{t}] disagree on their common subface"
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
            }
            let mut seen: HashMap<&Vec<usize>, usize> = HashMap::new();
            for (c, f) in faces[d].iter().enumerate() {
                if let Some(&o) = seen.get(f) {
                    return Err(ComplexError::DuplicateCube {
                        first: names[d][o].clone(),
                        second: names[d][c].clone(),
                    });
                }
                seen.insert(f, c);
            }
        }
        let mut x = CubeComplex {
            names,
            faces,
            labels,
            index,
            out_darts: Vec::new(),
            corners: Vec::new(),
        };
        x.derive_indices();
        Ok(x)
    }

    fn derive_indices(&mut self) {
        let nv = self.vertex_count();
        let mut out = vec![Vec::new(); nv];
        for e in 0..self.edge_count() {
            out[self.source(e)].push(Dart::forward(e));
            out[self.target(e)].push(Dart::new(e, true));
        }
        for v in out.iter_mut() {
            v.sort();
        }
        let mut corners = vec![Vec::new(); nv];
        for d in 2..=self.dim() {
            for i in 0..self.count(d) {
                let c = CubeRef { dim: d, index: i };
                for bits in 0..(1u32 << d) {
                    corners[self.corner_vertex(c, bits)].push(Corner { cube: c, bits });
                }
            }
        }
        self.out_darts = out;
        self.corners = corners;
    }

    pub fn dim(&self) -> usize {
        self.names.len() - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.names.get(d).map_or(0, |v| v.len())
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    pub fn edge_count(&self) -> usize {
        self.count(1)
    }

    pub fn square_count(&self) -> usize {
        self.count(2)
    }

    pub fn name(&self, c: CubeRef) -> &str {
        &self.names[c.dim][c.index]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[0][v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.names[1][e]
    }

    pub fn names(&self, d: usize) -> &[String] {
        self.names.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn lookup(&self, name: &str) -> Option<CubeRef> {
        self.index.get(name).copied()
    }

    pub fn labels(&self) -> &BTreeMap<String, String> {
        &self.labels
    }

    /// Label of an edge if present, otherwise its id.
    pub fn edge_label(&self, e: usize) -> &str {
        let n = self.edge_name(e);
        self.labels.get(n).map_or(n, |s| s.as_str())
    }

    pub fn faces(&self, c: CubeRef) -> &[usize] {
        &self.faces[c.dim][c.index]
    }

    pub fn face(&self, c: CubeRef, axis: usize, side: u32) -> CubeRef {
        CubeRef {
            dim: c.dim - 1,
            index: self.faces[c.dim][c.index][2 * axis + side as usize],
        }
    }

    pub fn source(&self, e: usize) -> usize {
        self.faces[1][e][0]
    }

    pub fn target(&self, e: usize) -> usize {
        self.faces[1][e][1]
    }

    pub fn tail(&self, d: Dart) -> usize {
        if d.rev {
            self.target(d.edge)
        } else {
            self.source(d.edge)
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        if d.rev {
            self.source(d.edge)
        } else {
            self.target(d.edge)
        }
    }

    /// Darts leaving `v`, sorted.
    pub fn out_darts(&self, v: usize) -> &[Dart] {
        &self.out_darts[v]
    }

    /// Corners of cubes of dimension at least two located at `v`.
    pub fn corners_at(&self, v: usize) -> &[Corner] {
        &self.corners[v]
    }

    /// The vertex of `c` with coordinates `bits`.
    pub fn corner_vertex(&self, c: CubeRef, bits: u32) -> usize {
        let mut cur = c;
        let mut b = bits;
        while cur.dim > 0 {
            cur = self.face(cur, 0, b & 1);
            b >>= 1;
        }
        cur.index
    }

    /// The subcube of `c` obtained by fixing every axis except those in `free`
    /// (a bitmask) to the coordinates given in `bits`.
    pub fn subcube(&self, c: CubeRef, free: u32, bits: u32) -> CubeRef {
        let mut cur = c;
        for k in (0..c.dim).rev() {
            if free >> k & 1 == 0 {
                cur = self.face(cur, k, bits >> k & 1);
            }
        }
        cur
    }

    /// The edge of `c` in direction `axis` through the corner `bits`.
    pub fn edge_at_corner(&self, c: CubeRef, bits: u32, axis: usize) -> usize {
        self.subcube(c, 1 << axis, bits).index
    }

    /// The dart leaving corner `bits` of `c` along `axis`.
    pub fn corner_dart(&self, c: CubeRef, bits: u32, axis: usize) -> Dart {
        Dart::new(self.edge_at_corner(c, bits, axis), bits >> axis & 1 == 1)
    }

    /// The germs of a corner, one dart per axis.
    pub fn corner_darts(&self, k: Corner) -> Vec<Dart> {
        (0..k.cube.dim).map(|a| self.corner_dart(k.cube, k.bits, a)).collect()
    }

    /// Vertices of a cube in corner order.
    pub fn cube_vertices(&self, c: CubeRef) -> Vec<usize> {
        (0..(1u32 << c.dim)).map(|b| self.corner_vertex(c, b)).collect()
    }

    /// All edges of a cube (with repetition removed).
    pub fn cube_edges(&self, c: CubeRef) -> Vec<usize> {
        if c.dim == 0 {
            return Vec::new();
        }
        let mut out = BTreeSet::new();
        for a in 0..c.dim {
            for b in 0..(1u32 << c.dim) {
                if b >> a & 1 == 0 {
                    out.insert(self.edge_at_corner(c, b, a));
                }
            }
        }
        out.into_iter().collect()
    }

    /// Finds the square with a corner at `tail(a)` whose two germs are `a` and `b`.
    /// Returns the corner and the axes carrying `a` and `b`.
    pub fn square_at(&self, a: Dart, b: Dart) -> Option<(Corner, usize, usize)> {
        let v = self.tail(a);
        for k in &self.corners[v] {
            if k.cube.dim != 2 {
                continue;
            }
            let d0 = self.corner_dart(k.cube, k.bits, 0);
            let d1 = self.corner_dart(k.cube, k.bits, 1);
            if d0 == a && d1 == b {
                return Some((*k, 0, 1));
            }
            if d1 == a && d0 == b {
                return Some((*k, 1, 0));
            }
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut cnt = 1;
        while let Some(v) = stack.pop() {
            for d in self.out_darts(v) {
                let w = self.head(*d);
                if !seen[w] {
                    seen[w] = true;
                    cnt += 1;
                    stack.push(w);
                }
            }
        }
        cnt == n
    }

    /// The link of `v`: vertices are out-darts, simplices come from corners.
    pub fn link(&self, v: usize) -> Link {
        let mut simplices = Vec::new();
        for k in &self.corners[v] {
            simplices.push((self.corner_darts(*k), *k));
        }
        Link {
            vertex: v,
            vertices: self.out_darts[v].clone(),
            simplices,
        }
    }

    pub fn dart_label(&self, d: Dart) -> String {
        if d.rev {
            format!("{}^-1", self.edge_label(d.edge))
        } else {
            self.edge_label(d.edge).to_string()
        }
    }

    /// Checks the Gromov link condition at every vertex.
    pub fn check_npc(&self) -> NpcReport {
        for v in 0..self.vertex_count() {
            if let Some(violation) = self.link(v).violation() {
                return NpcReport {
                    npc: false,
                    violation: Some(violation),
                };
            }
        }
        NpcReport {
            npc: true,
            violation: None,
        }
    }

    /// The cubical subdivision: each `d`-cube is cut into `2^d` cubes.
    ///
    /// A new cube is a pair `(c, t)` with `t` giving, per axis of `c`, the
    /// midpoint or the lower or upper half interval. Edges keep the label of
    /// the edge they halve, so a word of length `n` reads as length `2n`.
    pub fn subdivide(&self) -> CubeComplex {
        const MID: u8 = 0;
        const LOW: u8 = 1;
        const HIGH: u8 = 2;
        let code = |t: &[u8]| t.iter().rev().fold(0usize, |a, &x| 3 * a + x as usize);
        let types = |d: usize| {
            (0..3usize.pow(d as u32)).map(move |mut n| {
                (0..d)
                    .map(|_| {
                        let x = (n % 3) as u8;
                        n /= 3;
                        x
                    })
                    .collect::<Vec<u8>>()
            })
        };
        let top = self.dim();
        // new[d][i][code(t)] = (dimension, index) of the piece (c, t)
        let mut new: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
        let mut names: Vec<Vec<String>> = vec![Vec::new(); top + 1];
        let mut labels = BTreeMap::new();
        for d in 0..=top {
            let mut row = Vec::with_capacity(self.count(d));
            for i in 0..self.count(d) {
                let base = &self.names[d][i];
                let mut slots = Vec::with_capacity(3usize.pow(d as u32));
                for t in types(d) {
                    let nd = t.iter().filter(|&&x| x != MID).count();
                    let name = if d == 0 {
                        base.clone()
                    } else {
                        let tag: String = t.iter().map(|&x| ['m', 'l', 'h'][x as usize]).collect();
                        format!("{base}/{tag}")
                    };
                    if d == 1 {
                        labels.insert(name.clone(), self.edge_label(i).to_string());
                    }
                    names[nd].push(name);
                    slots.push((nd, names[nd].len() - 1));
                }
                row.push(slots);
            }
            new.push(row);
        }
        let mut faces: Vec<Vec<Vec<usize>>> = names.iter().map(|r| vec![Vec::new(); r.len()]).collect();
        for d in 0..=top {
            for i in 0..self.count(d) {
                let c = CubeRef { dim: d, index: i };
                for t in types(d) {
                    let (nd, ni) = new[d][i][code(&t)];
                    let mut f = Vec::with_capacity(2 * nd);
                    for j in (0..d).filter(|&j| t[j] != MID) {
                        for side in 0..2u32 {
                            let to_mid = (t[j] == LOW) == (side == 1);
                            let piece = if to_mid {
                                let mut u = t.clone();
                                u[j] = MID;
                                new[d][i][code(&u)]
                            } else {
                                let g = self.face(c, j, if t[j] == HIGH { 1 } else { 0 });
                                let mut u = t.clone();
                                u.remove(j);
                                new[g.dim][g.index][code(&u)]
                            };
                            debug_assert_eq!(piece.0 + 1, nd);
                            f.push(piece.1);
                        }
                    }
                    faces[nd][ni] = f;
                }
            }
        }
        CubeComplex::from_parts(names, faces, labels).expect("subdivision of a valid complex")
    }
}

impl fmt::Display for CubeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = (0..=self.dim()).map(|d| self.count(d).to_string()).collect();
        write!(f, "cube complex of dim {} with cube counts [{}]", self.dim(), counts.join(", "))
    }
}

/// Link of a vertex as an abstract complex over darts.
#[derive(Clone, Debug)]
pub struct Link {
    pub vertex: usize,
    pub vertices: Vec<Dart>,
    pub simplices: Vec<(Vec<Dart>, Corner)>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NpcViolation {
    /// A corner whose germs are not distinct.
    DegenerateSimplex { vertex: usize, corner: Corner },
    /// Two corners span the same germs.
    RepeatedSimplex { vertex: usize, first: Corner, second: Corner },
    /// A clique of the link that is not a simplex while all its faces are.
    EmptySimplex { vertex: usize, germs: Vec<Dart> },
}

impl serde::Serialize for Corner {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Corner", 3)?;
        st.serialize_field("dim", &self.cube.dim)?;
        st.serialize_field("index", &self.cube.index)?;
        st.serialize_field("bits", &self.bits)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct NpcReport {
    pub npc: bool,
    pub violation: Option<NpcViolation>,
}

impl Link {
    /// Simplex sets keyed by sorted germs.
    fn simplex_map(&self) -> Result<HashMap<Vec<Dart>, Corner>, NpcViolation> {
        let mut map: HashMap<Vec<Dart>, Corner> = HashMap::new();
        for (germs, corner) in &self.simplices {
            let mut s = germs.clone();
            s.sort();
            s.dedup();
            if s.len() != germs.len() {
                return Err(NpcViolation::DegenerateSimplex {
                    vertex: self.vertex,
                    corner: *corner,
                });
            }
            if let Some(first) = map.get(&s) {
                return Err(NpcViolation::RepeatedSimplex {
                    vertex: self.vertex,
                    first: *first,
                    second: *corner,
                });
            }
            map.insert(s, *corner);
        }
        Ok(map)
    }

    pub fn is_simplex(&self, germs: &[Dart]) -> bool {
        let mut s = germs.to_vec();
        s.sort();
        if s.len() <= 1 {
            return s.iter().all(|d| self.vertices.contains(d));
        }
        self.simplices.iter().any(|(g, _)| {
            let mut t = g.clone();
            t.sort();
            t == s
        })
    }

    /// First violation of the simplicial flag condition, if any.
    pub fn violation(&self) -> Option<NpcViolation> {
        let map = match self.simplex_map() {
            Ok(m) => m,
            Err(v) => return Some(v),
        };
        let mut adj: HashMap<Dart, HashSet<Dart>> = HashMap::new();
        let mut level: Vec<Vec<Dart>> = Vec::new();
        for s in map.keys() {
            if s.len() == 2 {
                adj.entry(s[0]).or_default().insert(s[1]);
                adj.entry(s[1]).or_default().insert(s[0]);
                level.push(s.clone());
            }
        }
        level.sort();
        while !level.is_empty() {
            let mut next = Vec::new();
            for s in &level {
                let last = *s.last().unwrap();
                let Some(cands) = adj.get(&s[0]) else { continue };
                let mut cands: Vec<Dart> = cands.iter().copied().filter(|c| *c > last).collect();
                cands.sort();
                for c in cands {
                    if !s.iter().all(|x| adj.get(x).map_or(false, |n| n.contains(&c))) {
                        continue;
                    }
                    let mut t = s.clone();
                    t.push(c);
                    let faces_ok = (0..t.len()).all(|skip| {
                        let f: Vec<Dart> = t
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != skip)
                            .map(|(_, d)| *d)
                            .collect();
                        map.contains_key(&f)
                    });
                    if !faces_ok {
                        continue;
                    }
                    if !map.contains_key(&t) {
                        return Some(NpcViolation::EmptySimplex {
                            vertex: self.vertex,
                            germs: t,
                        });
                    }
                    next.push(t);
                }
            }
            next.sort();
            next.dedup();
            level = next;
        }
        None
    }
}

/// Replays an NPC violation against a complex; true if it is a genuine certificate.
pub fn replay_violation(x: &CubeComplex, v: &NpcViolation) -> bool {
    match v {
        NpcViolation::DegenerateSimplex { vertex, corner } => {
            let g = x.corner_darts(*corner);
            let s: BTreeSet<Dart> = g.iter().copied().collect();
            x.corner_vertex(corner.cube, corner.bits) == *vertex && s.len() < g.len()
        }
        NpcViolation::RepeatedSimplex { vertex, first, second } => {
            let mut a = x.corner_darts(*first);
            let mut b = x.corner_darts(*second);
            a.sort();
            b.sort();
            first != second
                && x.corner_vertex(first.cube, first.bits) == *vertex
                && x.corner_vertex(second.cube, second.bits) == *vertex
                && a == b
        }
        NpcViolation::EmptySimplex { vertex, germs } => {
            let link = x.link(*vertex);
            if link.is_simplex(germs) {
                return false;
            }
            for i in 0..germs.len() {
                for j in i + 1..germs.len() {
                    if !link.is_simplex(&[germs[i], germs[j]]) {
                        return false;
                    }
                }
            }
            true
        }
    }
}
