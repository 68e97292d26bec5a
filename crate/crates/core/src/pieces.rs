//! Projections, cone-pieces, wall-pieces and radius-bounded certification.

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use serde::Serialize;

use crate::ball::{develop_ball_limited, BallError, DevelopedBall, Hyperplanes};
use crate::complex::CubeComplex;
use crate::elevation::{elevations, grow, Elevation};
use crate::geometry::{graph_diameter, Subcomplex};
use crate::presentation::{systole, CubicalPresentation, Systole};

/// `Proj(U -> V)`: the vertices of `V` together with the edges of `V` dual to
/// hyperplanes meeting `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Projection {
    /// Connected components that contain at least one edge, each with its
    /// vertices, edges and intrinsic diameter.
    pub fn components(&self, x: &CubeComplex) -> Vec<(Vec<usize>, Vec<usize>, usize)> {
        components_of(x, &self.edges)
    }
}

pub fn proj(x: &CubeComplex, hyper: &Hyperplanes, u: &Subcomplex, v: &Subcomplex) -> Projection {
    let mut hs: Vec<usize> = u.edges(x).iter().map(|&e| hyper.of_edge(e)).collect();
    hs.sort_unstable();
    hs.dedup();
    proj_by_hyperplanes(x, hyper, &hs, v)
}

/// Projection onto `v` of anything meeting exactly the hyperplanes `hs` (sorted).
pub fn proj_by_hyperplanes(x: &CubeComplex, hyper: &Hyperplanes, hs: &[usize], v: &Subcomplex) -> Projection {
    let edges = v
        .edges(x)
        .into_iter()
        .filter(|&e| hs.binary_search(&hyper.of_edge(e)).is_ok())
        .collect();
    Projection {
        vertices: v.vertices.clone(),
        edges,
    }
}

/// Components of the graph spanned by `edges`, with intrinsic diameters.
pub fn components_of(x: &CubeComplex, edges: &[usize]) -> Vec<(Vec<usize>, Vec<usize>, usize)> {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&e| [x.source(e), x.target(e)]).collect();
    verts.sort_unstable();
    verts.dedup();
    let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut adj = vec![Vec::new(); verts.len()];
    let mut uf = crate::util::UnionFind::new(verts.len());
    for &e in edges {
        let (a, b) = (pos[&x.source(e)], pos[&x.target(e)]);
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
        uf.union(a, b);
    }
    let (cls, k) = uf.classes();
    let mut out = Vec::with_capacity(k);
    for c in 0..k {
        let vs: Vec<usize> = (0..verts.len()).filter(|&i| cls[i] == c).collect();
        let local: HashMap<usize, usize> = vs.iter().enumerate().map(|(j, &i)| (i, j)).collect();
        let sub: Vec<Vec<usize>> = vs
            .iter()
            .map(|&i| adj[i].iter().filter_map(|w| local.get(w).copied()).collect())
            .collect();
        let diam = graph_diameter(&sub).unwrap_or(0);
        let cv: Vec<usize> = vs.iter().map(|&i| verts[i]).collect();
        let ce: Vec<usize> = edges
            .iter()
            .copied()
            .filter(|&e| cls[pos[&x.source(e)]] == c)
            .collect();
        out.push((cv, ce, diam));
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PieceKind {
    Cone,
    Wall,
}

/// What the host elevation was projected from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Elevation { relator: usize, vertex: String, label: String },
    Hyperplane { edge: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub kind: PieceKind,
    /// Relator index of the host elevation.
    pub host: usize,
    /// Seed of the host elevation: ball vertex name and relator vertex name.
    pub host_vertex: String,
    pub host_label: String,
    pub witness: Witness,
    /// Ball vertex names of the piece, sorted by vertex index.
    pub vertices: Vec<String>,
    pub edge_count: usize,
    pub diameter: usize,
}

fn seed_names(p: &CubicalPresentation, ball: &DevelopedBall, e: &Elevation) -> (String, String) {
    let y = p.relators[e.relator].complex();
    (
        ball.complex().vertex_name(e.basepoint.0).to_string(),
        y.vertex_name(e.basepoint.1).to_string(),
    )
}

fn make_piece(
    p: &CubicalPresentation,
    ball: &DevelopedBall,
    kind: PieceKind,
    host: &Elevation,
    witness: Witness,
    comp: (Vec<usize>, Vec<usize>, usize),
) -> Piece {
    let (hv, hl) = seed_names(p, ball, host);
    Piece {
        kind,
        host: host.relator,
        host_vertex: hv,
        host_label: hl,
        witness,
        vertices: comp.0.iter().map(|&v| ball.complex().vertex_name(v).to_string()).collect(),
        edge_count: comp.1.len(),
        diameter: comp.2,
    }
}

/// Hyperplanes meeting an elevation, sorted.
pub fn elevation_hyperplanes(x: &CubeComplex, hyper: &Hyperplanes, e: &Elevation) -> Vec<usize> {
    let mut hs: Vec<usize> = e.image.edges(x).iter().map(|&k| hyper.of_edge(k)).collect();
    hs.sort_unstable();
    hs.dedup();
    hs
}

/// Cone-pieces in `host` coming from each other elevation in `others`.
pub fn cone_pieces(
    p: &CubicalPresentation,
    ball: &DevelopedBall,
    hyper: &Hyperplanes,
    host: &Elevation,
    others: &[Elevation],
) -> Vec<Piece> {
    let x = ball.complex();
    let host_hs = elevation_hyperplanes(x, hyper, host);
    let mut out = Vec::new();
    for u in others {
        if u.image == host.image {
            continue;
        }
        let hs = elevation_hyperplanes(x, hyper, u);
        if !sorted_intersects(&hs, &host_hs) {
            continue;
        }
        let pr = proj_by_hyperplanes(x, hyper, &hs, &host.image);
        let (uv, ul) = seed_names(p, ball, u);
        for comp in pr.components(x) {
            let w = Witness::Elevation {
                relator: u.relator,
                vertex: uv.clone(),
                label: ul.clone(),
            };
            out.push(make_piece(p, ball, PieceKind::Cone, host, w, comp));
        }
    }
    out
}

/// Wall-pieces in `host`: projections of carriers of hyperplanes that do not
/// meet the host inside the ball.
pub fn wall_pieces(p: &CubicalPresentation, ball: &DevelopedBall, hyper: &Hyperplanes, host: &Elevation) -> Vec<Piece> {
    let x = ball.complex();
    let host_hs = elevation_hyperplanes(x, hyper, host);
    let mut out = Vec::new();
    for h in 0..hyper.len() {
        if host_hs.binary_search(&h).is_ok() {
            continue;
        }
        // hyperplanes meeting the carrier: h and those crossing it
        let mut hs = hyper.crossings(h).to_vec();
        hs.push(h);
        hs.sort_unstable();
        if !sorted_intersects(&hs, &host_hs) {
            continue;
        }
        let pr = proj_by_hyperplanes(x, hyper, &hs, &host.image);
        let edge = x.edge_name(hyper.edges(h)[0]).to_string();
        for comp in pr.components(x) {
            out.push(make_piece(p, ball, PieceKind::Wall, host, Witness::Hyperplane { edge: edge.clone() }, comp));
        }
    }
    out
}

fn sorted_intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedAtRadius,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Budgets {
    /// Largest essential loop length searched when computing systoles.
    pub systole_maxlen: usize,
    /// Cap on developed ball vertices.
    pub max_ball_vertices: usize,
    /// Cap on host-partner elevation pairs examined.
    pub max_pairs: usize,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets {
            systole_maxlen: 512,
            max_ball_vertices: 2_000_000,
            max_pairs: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelatorSummary {
    pub relator: usize,
    pub name: String,
    pub systole: Systole,
    pub max_cone_piece: usize,
    pub max_wall_piece: usize,
    pub elevations_at_core: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceReport {
    pub radius: usize,
    pub core_radius: usize,
    pub alpha: String,
    pub budgets: Budgets,
    pub relators: Vec<RelatorSummary>,
    /// The largest piece of each kind per relator.
    pub maximal_pieces: Vec<Piece>,
    /// A violating piece when refuted.
    pub witness: Option<Piece>,
    pub verdict: Verdict,
    pub pairs_examined: usize,
    pub note: String,
}

impl PieceReport {
    pub fn to_json(&self) -> String {
        crate::json::to_canonical_string(self)
    }

    /// One line per relator: name, systole, largest piece, piece/systole ratio.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("relator,systole,max_piece,ratio\n");
        for r in &self.relators {
            let m = r.max_cone_piece.max(r.max_wall_piece);
            let ratio = match r.systole {
                Systole::Exact(n) if n > 0 => format!("{}", Ratio::new(m as i64, n as i64)),
                _ => "unknown".to_string(),
            };
            s.push_str(&format!("{},{},{},{}\n", r.name, r.systole, m, ratio));
        }
        s
    }
}

#[derive(thiserror::Error, Debug)]
pub enum CertifyError {
    #[error("budget exceeded: {reason}")]
    BudgetExceeded { reason: String, partial: Box<PieceReport> },
    #[error(transparent)]
    Ball(#[from] BallError),
}

/// True when `diam < alpha * systole` holds exactly.
pub fn piece_is_small(diam: usize, alpha: Ratio<i64>, systole: usize) -> bool {
    Ratio::from_integer(diam as i64) < alpha * Ratio::from_integer(systole as i64)
}

/// Default core radius: `0` when the deck group acts transitively on
/// vertices (one-vertex base), otherwise half the radius.
pub fn default_core(p: &CubicalPresentation, radius: usize) -> usize {
    if p.base.vertex_count() == 1 {
        0
    } else {
        radius / 2
    }
}

/// Checks the small-cancellation condition on all pieces whose host elevation
/// meets the core ball, inside the developed ball of the given radius.
pub fn certify(p: &CubicalPresentation, radius: usize, budgets: &Budgets) -> Result<PieceReport, CertifyError> {
    certify_with_core(p, radius, default_core(p, radius), budgets)
}

pub fn certify_with_core(
    p: &CubicalPresentation,
    radius: usize,
    core: usize,
    budgets: &Budgets,
) -> Result<PieceReport, CertifyError> {
    let systoles: Vec<Systole> = p
        .relators
        .iter()
        .map(|r| systole(r.complex(), budgets.systole_maxlen))
        .collect();
    let mut report = PieceReport {
        radius,
        core_radius: core,
        alpha: p.alpha.to_string(),
        budgets: budgets.clone(),
        relators: Vec::new(),
        maximal_pieces: Vec::new(),
        witness: None,
        verdict: Verdict::CertifiedAtRadius,
        pairs_examined: 0,
        note: String::new(),
    };
    if p.relators.is_empty() {
        report.note = "no relators".into();
        return Ok(report);
    }
    let ball = develop_ball_limited(p.base.clone(), 0, radius, budgets.max_ball_vertices)?;
    let hyper = ball.hyperplanes();
    let x = ball.complex();
    let all: Vec<Vec<Elevation>> = p
        .relators
        .iter()
        .enumerate()
        .map(|(i, r)| elevations(&r.map, i, &ball, radius))
        .collect();
    let flat: Vec<Elevation> = all.iter().flatten().cloned().collect();
    // index partners by hyperplane
    let mut by_h: HashMap<usize, Vec<usize>> = HashMap::new();
    let flat_hs: Vec<Vec<usize>> = flat.iter().map(|e| elevation_hyperplanes(x, &hyper, e)).collect();
    for (k, hs) in flat_hs.iter().enumerate() {
        for &h in hs {
            by_h.entry(h).or_default().push(k);
        }
    }
    let mut best: BTreeMap<(usize, PieceKind), Piece> = BTreeMap::new();
    let mut witness: Option<Piece> = None;
    let mut hosts_at_core = vec![0usize; p.relators.len()];
    let mut exceeded = None;
    'hosts: for (k, host) in flat.iter().enumerate() {
        if !host.image.vertices.iter().any(|&v| ball.depth(v) <= core) {
            continue;
        }
        hosts_at_core[host.relator] += 1;
        let mut partners: Vec<usize> = flat_hs[k].iter().flat_map(|h| by_h[h].iter().copied()).collect();
        partners.sort_unstable();
        partners.dedup();
        report.pairs_examined += partners.len();
        if report.pairs_examined > budgets.max_pairs {
            exceeded = Some("elevation pairs".to_string());
            break 'hosts;
        }
        let others: Vec<Elevation> = partners.iter().filter(|&&j| j != k).map(|&j| flat[j].clone()).collect();
        let mut pieces = cone_pieces(p, &ball, &hyper, host, &others);
        pieces.extend(wall_pieces(p, &ball, &hyper, host));
        for pc in pieces {
            let key = (pc.host, pc.kind);
            if best.get(&key).map_or(true, |b| pc.diameter > b.diameter) {
                best.insert(key, pc.clone());
            }
            if let Systole::Exact(s) = systoles[pc.host] {
                if !piece_is_small(pc.diameter, p.alpha, s)
                    && witness.as_ref().map_or(true, |w| pc.diameter > w.diameter)
                {
                    witness = Some(pc);
                }
            }
        }
    }
    for (i, r) in p.relators.iter().enumerate() {
        report.relators.push(RelatorSummary {
            relator: i,
            name: r.name.clone(),
            systole: systoles[i],
            max_cone_piece: best.get(&(i, PieceKind::Cone)).map_or(0, |b| b.diameter),
            max_wall_piece: best.get(&(i, PieceKind::Wall)).map_or(0, |b| b.diameter),
            elevations_at_core: hosts_at_core[i],
        });
    }
    report.maximal_pieces = best.into_values().collect();
    report.verdict = if witness.is_some() {
        Verdict::Refuted
    } else if systoles.iter().any(|s| s.exact().is_none()) || exceeded.is_some() {
        Verdict::Inconclusive
    } else {
        Verdict::CertifiedAtRadius
    };
    report.witness = witness;
    if let Some(reason) = exceeded {
        if report.verdict != Verdict::Refuted {
            report.note = format!("budget exhausted: {reason}");
            return Err(CertifyError::BudgetExceeded {
                reason,
                partial: Box::new(report),
            });
        }
    }
    Ok(report)
}

/// Recomputes the diameter of a reported piece from its witness.
pub fn replay_piece(p: &CubicalPresentation, radius: usize, piece: &Piece) -> Option<usize> {
    let ball = develop_ball_limited(p.base.clone(), 0, radius, usize::MAX).ok()?;
    let hyper = ball.hyperplanes();
    let x = ball.complex();
    let host = seed_elevation(p, &ball, piece.host, &piece.host_vertex, &piece.host_label)?;
    let hs: Vec<usize> = match &piece.witness {
        Witness::Elevation { relator, vertex, label } => {
            let u = seed_elevation(p, &ball, *relator, vertex, label)?;
            elevation_hyperplanes(x, &hyper, &u)
        }
        Witness::Hyperplane { edge } => {
            let e = x.lookup(edge)?;
            let h = hyper.of_edge(e.index);
            let mut hs = hyper.crossings(h).to_vec();
            hs.push(h);
            hs.sort_unstable();
            hs
        }
    };
    let first = ball.vertex_by_name(piece.vertices.first()?)?;
    proj_by_hyperplanes(x, &hyper, &hs, &host.image)
        .components(x)
        .into_iter()
        .find(|c| c.0.contains(&first))
        .map(|c| c.2)
}

fn seed_elevation(
    p: &CubicalPresentation,
    ball: &DevelopedBall,
    relator: usize,
    vertex: &str,
    label: &str,
) -> Option<Elevation> {
    let r = p.relators.get(relator)?;
    let u = ball.vertex_by_name(vertex)?;
    let y = r.complex().lookup(label)?.index;
    let pairs = grow(&r.map, ball, u, y);
    let mut vs: Vec<(usize, usize)> = pairs;
    vs.sort_unstable();
    vs.dedup_by_key(|p| p.0);
    Some(Elevation {
        relator,
        image: Subcomplex {
            vertices: vs.iter().map(|p| p.0).collect(),
        },
        labels: vs.iter().map(|p| p.1).collect(),
        basepoint: vs[0],
    })
}
