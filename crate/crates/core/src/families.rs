//! Generators for standard presentations: classical one-vertex presentations,
//! Salvetti complexes of right-angled Artin groups, quotients of axis hulls
//! and the Artin recipe built from them.
//!
//! Words are strings over single-letter generators; an upper-case letter is
//! the inverse of its lower-case generator.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::ball::{develop_ball_limited, BallError};
use crate::complex::{ComplexBuilder, ComplexError, CubeComplex, CubeRef, Dart};
use crate::geometry::{GeomError, Geometry};
use crate::map::{CubicalMap, MapError};
use crate::presentation::{CubicalPresentation, PresentationError, Relator};
use crate::util::UnionFind;

#[derive(thiserror::Error, Debug)]
pub enum FamilyError {
    #[error("word `{0}` is not cyclically reduced")]
    NotImmersed(String),
    #[error("letter `{0}` is not a generator")]
    UnknownLetter(char),
    #[error("ball too small to contain the axis hull")]
    BallTooSmall,
    #[error("axis hull is not cocompact within budget")]
    HullNotCocompact,
    #[error("path is not closed")]
    NotClosed,
    #[error("bad Artin matrix: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

pub fn generator_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

/// Inverse word: reversed with cases swapped.
pub fn invert_word(w: &str) -> String {
    w.chars()
        .rev()
        .map(|c| {
            if c.is_uppercase() {
                c.to_ascii_lowercase()
            } else {
                c.to_ascii_uppercase()
            }
        })
        .collect()
}

/// The first `m` letters of `(xy)^m`.
pub fn half_power(x: char, y: char, m: usize) -> String {
    (0..m).map(|i| if i % 2 == 0 { x } else { y }).collect()
}

/// True when the cyclic word has no cancelling neighbors.
pub fn is_cyclically_reduced(w: &str) -> bool {
    let c: Vec<char> = w.chars().collect();
    let n = c.len();
    if n == 0 {
        return false;
    }
    (0..n).all(|i| {
        let (a, b) = (c[i], c[(i + 1) % n]);
        !(a != b && a.to_ascii_lowercase() == b.to_ascii_lowercase())
    })
}

/// Bouquet of `k` circles named `a, b, ...`.
pub fn wedge(k: usize) -> CubeComplex {
    salvetti(&SimpleGraph::edgeless(k))
}

/// A simple graph on named vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    pub names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn edgeless(n: usize) -> SimpleGraph {
        SimpleGraph {
            names: (0..n).map(generator_name).collect(),
            edges: Vec::new(),
        }
    }

    pub fn new(n: usize, edges: &[(usize, usize)]) -> SimpleGraph {
        let mut e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        e.sort_unstable();
        e.dedup();
        SimpleGraph {
            names: (0..n).map(generator_name).collect(),
            edges: e,
        }
    }

    pub fn path(n: usize) -> SimpleGraph {
        let e: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        SimpleGraph::new(n, &e)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// All cliques with at least one vertex, each sorted, by size then lex.
    pub fn cliques(&self) -> Vec<Vec<usize>> {
        let n = self.names.len();
        let mut out: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        let mut level = out.clone();
        while !level.is_empty() {
            let mut next = Vec::new();
            for c in &level {
                let last = *c.last().unwrap();
                for v in last + 1..n {
                    if c.iter().all(|&u| self.adjacent(u, v)) {
                        let mut d = c.clone();
                        d.push(v);
                        next.push(d);
                    }
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }
}

fn clique_name(g: &SimpleGraph, c: &[usize]) -> String {
    c.iter().map(|&i| g.names[i].as_str()).collect::<Vec<_>>().join("")
}

/// Salvetti complex: one vertex, one loop per generator, one cube per clique.
/// Axis `j` of a cube is its `j`-th generator; both faces across axis `j` are
/// the cube of the clique without that generator.
pub fn salvetti(g: &SimpleGraph) -> CubeComplex {
    let mut b = ComplexBuilder::new();
    let v = b.add_vertex("v");
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for c in g.cliques() {
        let name = clique_name(g, &c);
        let id = if c.len() == 1 {
            b.add_edge(name, v, v)
        } else {
            let mut faces = Vec::with_capacity(2 * c.len());
            for j in 0..c.len() {
                let mut f = c.clone();
                f.remove(j);
                let fi = index[&f];
                faces.push(fi);
                faces.push(fi);
            }
            b.add_cube(name, faces)
        };
        index.insert(c, id);
    }
    b.build().expect("Salvetti complex is valid")
}

/// Parses a word into darts of a one-vertex complex whose edge labels are letters.
pub fn word_darts(x: &CubeComplex, w: &str) -> Result<Vec<Dart>, FamilyError> {
    let mut out = Vec::new();
    for ch in w.chars() {
        let lower = ch.to_ascii_lowercase().to_string();
        let e = (0..x.edge_count())
            .find(|&e| x.edge_label(e) == lower)
            .ok_or(FamilyError::UnknownLetter(ch))?;
        out.push(Dart::new(e, ch.is_uppercase()));
    }
    Ok(out)
}

/// A cycle of length `|w|` mapped onto the closed path `darts` of `x`.
pub fn immersed_cycle(
    x: &Arc<CubeComplex>,
    start: usize,
    darts: &[Dart],
) -> Result<CubicalMap, FamilyError> {
    let n = darts.len();
    let mut v = start;
    let mut verts = Vec::with_capacity(n);
    for d in darts {
        if x.tail(*d) != v {
            return Err(FamilyError::NotClosed);
        }
        verts.push(v);
        v = x.head(*d);
    }
    if v != start {
        return Err(FamilyError::NotClosed);
    }
    let mut b = ComplexBuilder::new();
    let ys: Vec<usize> = (0..n).map(|i| b.add_vertex(format!("y{i}"))).collect();
    let mut edge_img = Vec::with_capacity(n);
    for (i, d) in darts.iter().enumerate() {
        let (s, t) = (ys[i], ys[(i + 1) % n]);
        let name = format!("e{i}");
        if d.rev {
            b.add_edge(name.clone(), t, s);
        } else {
            b.add_edge(name.clone(), s, t);
        }
        b.set_label(name, x.edge_label(d.edge));
        edge_img.push(d.edge);
    }
    let y = Arc::new(b.build()?);
    Ok(CubicalMap::new(y, x.clone(), vec![verts, edge_img])?)
}

/// A length-300 relator over `a, b` in which every cyclic subword of length 6
/// occurs once among the cyclic words `w` and `w^-1`; pieces have length at
/// most 5. Found by seeded greedy search.
pub const CLASSICAL_300: &str = concat!(
    "BBaabAbbaBABAABBAbbAAbAABBabaaabAbAbAABabAbbbbbaaababaabaaaB",
    "BAABAAbABAbbAbaaaabaaBBAbbbbaBAbbabAABAbaabbbabABAABaaBaBABa",
    "BAbbbAAAAbaaBBaBBBBBBAAbAbbAbAAAbbAAAbabaBBABaaBAbABaBABBABB",
    "BBAbAAAABBAAbabAAABBaBBaaBABAbabABaBaBabAbABBAbabbaBBAAbbaab",
    "AABBBAbaBAABaBaaBabABABBBababbaaBBBAbbaBabbababaBaBBBABaBaba"
);

/// A length-300 relator over `a, ..., f` in which every cyclic subword of
/// length 3 occurs once among `w` and `w^-1`; pieces have length at most 2.
pub const CLASSICAL_300_SIX: &str = concat!(
    "BDCdEcEDeaEaEfDfEbEBdBdCAfBdFdbCAADEcbDaBdfEcebdeAFdfacedbbF",
    "dacEcDcEfecFAdFEbfdbdEdCbfDEaBDBCdedCFeFceACFbEEFcacFFCFBABf",
    "eBddbDCbFAcBfdcFcEdaDEfBEbDedfeFCCCAdaBeaaDAEfdCCFADCBBcFDae",
    "FeeAceFEaFbFbcDAfdefBAcEadBBecEAfCdbEDaEABdEEAFFdEfAdAfEECdc",
    "cabaddfbbCbeAAfABcfcBAfbaDCacABeBCABaEbddFaFcfAAcDfbCeabeDFF"
);

pub const DEFAULT_ALPHA: (i64, i64) = (1, 144);

/// `<a, b, ... | w_1, ..., w_r>` as a cubical presentation over a bouquet.
pub fn classical_presentation(k: usize, words: &[&str]) -> Result<CubicalPresentation, FamilyError> {
    let x = Arc::new(wedge(k));
    let mut relators = Vec::new();
    for (i, w) in words.iter().enumerate() {
        if !is_cyclically_reduced(w) {
            return Err(FamilyError::NotImmersed(w.to_string()));
        }
        let darts = word_darts(&x, w)?;
        relators.push(Relator {
            name: format!("r{}", i + 1),
            map: immersed_cycle(&x, 0, &darts)?,
        });
    }
    Ok(CubicalPresentation::new(
        x,
        relators,
        Ratio::new(DEFAULT_ALPHA.0, DEFAULT_ALPHA.1),
        true,
    )?)
}

/// Budget for hull quotients that need a developed ball.
#[derive(Clone, Copy, Debug)]
pub struct AxisBudget {
    pub max_periods: usize,
    pub max_ball_vertices: usize,
}

impl Default for AxisBudget {
    fn default() -> AxisBudget {
        AxisBudget {
            max_periods: 6,
            max_ball_vertices: 300_000,
        }
    }
}

/// `<g> \ hull(axis of g)` with its local isometry into `x`.
///
/// When no two cyclically consecutive darts of `g` span a square, the axis is
/// the unique geodesic between any two of its points, so it is its own hull
/// and the quotient is a cycle of length `|g|`. Otherwise the hull of a long
/// axis segment is computed in a developed ball and folded by the translation;
/// the quotient is accepted once its size stabilizes.
pub fn axis_hull_quotient(
    x: &Arc<CubeComplex>,
    start: usize,
    g: &[Dart],
    budget: AxisBudget,
) -> Result<CubicalMap, FamilyError> {
    let n = g.len();
    if n == 0 {
        return Err(FamilyError::NotImmersed(String::new()));
    }
    for i in 0..n {
        if g[(i + 1) % n] == g[i].inverse() {
            return Err(FamilyError::NotImmersed(format!("{:?}", g)));
        }
    }
    let cornerless = (0..n).all(|i| x.square_at(g[i].inverse(), g[(i + 1) % n]).is_none());
    if cornerless {
        return immersed_cycle(x, start, g);
    }
    let mut last: Option<usize> = None;
    for periods in 2..=budget.max_periods {
        let radius = (periods + 1) * n + 2;
        let ball = match develop_ball_limited(x.clone(), start, radius, budget.max_ball_vertices) {
            Ok(b) => Arc::new(b),
            Err(BallError::TooLarge { .. }) => return Err(FamilyError::BallTooSmall),
            Err(BallError::NotNpc(_)) => return Err(FamilyError::BallTooSmall),
            Err(e) => return Err(FamilyError::Complex(ComplexError::Malformed(e.to_string()))),
        };
        let inv: Vec<Dart> = g.iter().rev().map(|d| d.inverse()).collect();
        let geo = Geometry::new(ball.clone());
        let root = ball.root();
        let mut pts = vec![root];
        let (mut fwd, mut back) = (root, root);
        for _ in 0..periods {
            fwd = ball.walk(fwd, g).ok_or(FamilyError::BallTooSmall)?;
            back = ball.walk(back, &inv).ok_or(FamilyError::BallTooSmall)?;
            pts.push(fwd);
            pts.push(back);
        }
        let hull = match geo.convex_hull(&pts) {
            Ok(h) => h,
            Err(GeomError::HullTruncated(_)) | Err(GeomError::OutOfBall(_)) => {
                return Err(FamilyError::BallTooSmall)
            }
            Err(e) => return Err(FamilyError::Complex(ComplexError::Malformed(e.to_string()))),
        };
        let g_root = ball.walk(root, g).ok_or(FamilyError::BallTooSmall)?;
        let translate = |v: usize| -> Option<usize> { ball.walk(g_root, &ball.name_path(v)) };
        // central vertices: the hull contains both neighbors in the orbit
        let central: Vec<usize> = hull
            .vertices
            .iter()
            .copied()
            .filter(|&v| {
                let f = translate(v).map_or(false, |w| hull.contains(w));
                let b = hull.vertices.iter().any(|&u| translate(u) == Some(v));
                f && b
            })
            .collect();
        let pos: HashMap<usize, usize> = central.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut uf = UnionFind::new(central.len());
        for (i, &v) in central.iter().enumerate() {
            if let Some(j) = translate(v).and_then(|w| pos.get(&w)) {
                uf.union(i, *j);
            }
        }
        let (cls, k) = uf.classes();
        if last == Some(k) {
            return fold_quotient(x, &ball, &central, &cls, k);
        }
        last = Some(k);
    }
    Err(FamilyError::HullNotCocompact)
}

fn fold_quotient(
    x: &Arc<CubeComplex>,
    ball: &crate::ball::DevelopedBall,
    central: &[usize],
    cls: &[usize],
    k: usize,
) -> Result<CubicalMap, FamilyError> {
    let bx = ball.complex();
    let class_of: HashMap<usize, usize> = central.iter().enumerate().map(|(i, v)| (*v, cls[i])).collect();
    let mut b = ComplexBuilder::new();
    let mut vimg = vec![0; k];
    for c in 0..k {
        b.add_vertex(format!("y{c}"));
    }
    for (i, &v) in central.iter().enumerate() {
        vimg[cls[i]] = ball.project_vertex(v);
    }
    let mut assignment: Vec<Vec<usize>> = vec![vimg];
    // cube key: (class of corner 0, base cube) per dimension
    let mut keys: Vec<BTreeMap<(usize, usize), usize>> = vec![BTreeMap::new()];
    for c in 0..k {
        keys[0].insert((c, assignment[0][c]), c);
    }
    for d in 1..=bx.dim() {
        let mut key_d: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut img = Vec::new();
        for i in 0..bx.count(d) {
            let c = CubeRef { dim: d, index: i };
            let vs = bx.cube_vertices(c);
            if !vs.iter().all(|v| class_of.contains_key(v)) {
                continue;
            }
            let base_c = ball.project(c).index;
            let key = (class_of[&vs[0]], base_c);
            if key_d.contains_key(&key) {
                continue;
            }
            let mut faces = Vec::with_capacity(2 * d);
            let mut ok = true;
            for axis in 0..d {
                for side in 0..2u32 {
                    let f = bx.face(c, axis, side);
                    let fv = bx.corner_vertex(f, 0);
                    let fk = (class_of[&fv], ball.project(f).index);
                    match keys[d - 1].get(&fk) {
                        Some(&id) => faces.push(id),
                        None => ok = false,
                    }
                }
            }
            if !ok {
                continue;
            }
            let name = format!("y{}:{}", key.0, x.name(CubeRef { dim: d, index: base_c }));
            let id = if d == 1 {
                b.add_edge(name.clone(), faces[0], faces[1])
            } else {
                b.add_cube(name.clone(), faces)
            };
            if d == 1 {
                b.set_label(name, x.edge_label(base_c));
            }
            key_d.insert(key, id);
            img.push(base_c);
        }
        keys.push(key_d);
        assignment.push(img);
    }
    let y = Arc::new(b.build()?);
    let f = CubicalMap::new(y, x.clone(), assignment)?;
    Ok(f)
}

/// Coxeter-type matrix for an Artin group; `None` encodes infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinSpec {
    pub n: usize,
    pub m: Vec<Vec<Option<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    /// Every off-diagonal entry is 2, infinity, or above 72.
    pub large_or_right_angled: bool,
    /// Pairs with a common commuting neighbor have entry 2 or infinity.
    pub common_neighbor: bool,
    /// Pairs that violate the common-neighbor condition.
    pub wall_piece_risk: Vec<(usize, usize)>,
    /// Both conditions hold.
    pub predicts_certified: bool,
}

impl ArtinSpec {
    pub fn two_generator(m: Option<u32>) -> ArtinSpec {
        ArtinSpec {
            n: 2,
            m: vec![vec![Some(1), m], vec![m, Some(1)]],
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        if self.m.len() != self.n || self.m.iter().any(|r| r.len() != self.n) {
            return Err(FamilyError::BadSpec(format!("matrix must be {0}x{0}", self.n)));
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    if self.m[i][j] != self.m[j][i] {
                        return Err(FamilyError::BadSpec(format!("m[{i}][{j}] != m[{j}][{i}]")));
                    }
                    if matches!(self.m[i][j], Some(v) if v < 2) {
                        return Err(FamilyError::BadSpec(format!("m[{i}][{j}] < 2")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<u32> {
        self.m[i][j]
    }

    pub fn commuting_graph(&self) -> SimpleGraph {
        let mut e = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.m[i][j] == Some(2) {
                    e.push((i, j));
                }
            }
        }
        SimpleGraph::new(self.n, &e)
    }

    pub fn admissibility(&self) -> Admissibility {
        let mut large = true;
        let mut risk = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let m = self.m[i][j];
                if let Some(v) = m {
                    if v != 2 && v <= 72 {
                        large = false;
                    }
                }
                let common = (0..self.n)
                    .any(|k| k != i && k != j && self.m[i][k] == Some(2) && self.m[j][k] == Some(2));
                if common && !matches!(m, Some(2) | None) {
                    risk.push((i, j));
                }
            }
        }
        Admissibility {
            large_or_right_angled: large,
            common_neighbor: risk.is_empty(),
            predicts_certified: large && risk.is_empty(),
            wall_piece_risk: risk,
        }
    }
}

/// `g_ij`: the first half of `(xy)^m` followed by the inverse of the first
/// half of `(yx)^m`.
pub fn artin_axis_word(x: char, y: char, m: usize) -> String {
    let mut w = half_power(x, y, m);
    w.push_str(&invert_word(&half_power(y, x, m)));
    w
}

pub fn artin_presentation(
    spec: &ArtinSpec,
    budget: AxisBudget,
) -> Result<(CubicalPresentation, Admissibility), FamilyError> {
    spec.validate()?;
    let x = Arc::new(salvetti(&spec.commuting_graph()));
    let mut relators = Vec::new();
    for i in 0..spec.n {
        for j in i + 1..spec.n {
            if let Some(m) = spec.m[i][j] {
                if m > 2 {
                    let gi = generator_name(i).chars().next().unwrap();
                    let gj = generator_name(j).chars().next().unwrap();
                    let w = artin_axis_word(gi, gj, m as usize);
                    let darts = word_darts(&x, &w)?;
                    let f = axis_hull_quotient(&x, 0, &darts, budget)?;
                    relators.push(Relator {
                        name: format!("Y{}{}", i + 1, j + 1),
                        map: f,
                    });
                }
            }
        }
    }
    let p = CubicalPresentation::new(x, relators, Ratio::new(DEFAULT_ALPHA.0, DEFAULT_ALPHA.1), true)?;
    Ok((p, spec.admissibility()))
}
