//! Audits of the projection to the cone-off: relator cones and product
//! subcomplexes have small image, the projection is 1-Lipschitz, and square
//! bigons project to thin bigons.

use std::collections::BTreeSet;

use cubsc_core::{CubeRef, CubicalPresentation, Dart, Geometry, Path};
use cubsc_diagram::cayley::CayleyBall;
use cubsc_diagram::{find_diagram, SearchBudget};
use serde::Serialize;

use crate::graph::{ConeKind, ConeOffGraph};
use crate::ConeOffError;

/// Bound on the image of a relator cone.
pub const RELATOR_BOUND: u32 = 2;
/// Bound on the image of a product subcomplex.
pub const PRODUCT_BOUND: u32 = 4;
/// Bound on the Hausdorff distance of a projected square bigon.
pub const BIGON_BOUND: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    RelatorCone { cone: usize, diameter: u32 },
    Product { corners: (String, String), diameter: u32 },
    Lipschitz { u: usize, v: usize, distance: u32 },
    CubeSpread { dim: usize, index: usize, distance: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductRecord {
    /// Opposite corners of the interval, by vertex name.
    pub corners: (String, String),
    pub vertices: usize,
    /// Hyperplane counts of the two factors.
    pub factors: (usize, usize),
    pub diameter: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub relator_cones: usize,
    pub relator_max: Option<u32>,
    pub products: Vec<ProductRecord>,
    pub product_max: Option<u32>,
    pub edges_checked: usize,
    /// Largest distance from the image of a cube to one of its vertices.
    pub cube_spread: u32,
    pub violations: Vec<Violation>,
}

impl ProjectionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn products_csv(&self) -> String {
        let mut s = String::from("x,y,vertices,factor_a,factor_b,diameter\n");
        for p in &self.products {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                p.corners.0, p.corners.1, p.vertices, p.factors.0, p.factors.1, p.diameter
            ));
        }
        s
    }
}

pub fn audit_projection(g: &ConeOffGraph, ball: &CayleyBall) -> ProjectionReport {
    let x = ball.complex();
    let mut rep = ProjectionReport::default();

    for cone in g.cones() {
        if let ConeKind::Relator { .. } = cone.kind {
            let d = g.set_diameter_bounded(&cone.members, RELATOR_BOUND);
            rep.relator_cones += 1;
            rep.relator_max = Some(rep.relator_max.unwrap_or(0).max(d));
            if d > RELATOR_BOUND {
                rep.violations.push(Violation::RelatorCone {
                    cone: cone.vertex,
                    diameter: d,
                });
            }
        }
    }

    for e in 0..x.edge_count() {
        let (u, v) = (g.project(CubeRef { dim: 0, index: x.source(e) }), g.project(CubeRef { dim: 0, index: x.target(e) }));
        let d = g.set_diameter_bounded(&[u, v], 1);
        rep.edges_checked += 1;
        if d > 1 {
            rep.violations.push(Violation::Lipschitz { u, v, distance: d });
        }
    }
    for dim in 1..=x.dim() {
        for index in 0..x.count(dim) {
            let c = CubeRef { dim, index };
            let p = g.project(c);
            let local = g.local_distances(p, 2);
            let spread = x
                .cube_vertices(c)
                .iter()
                .map(|w| local.get(w).copied().unwrap_or_else(|| g.distance(p, *w)))
                .max()
                .unwrap_or(0);
            rep.cube_spread = rep.cube_spread.max(spread);
            if spread > 2 {
                rep.violations.push(Violation::CubeSpread { dim, index, distance: spread });
            }
        }
    }

    for (corners, set, factors) in product_intervals(ball) {
        let d = g.set_diameter_bounded(&set, PRODUCT_BOUND);
        rep.product_max = Some(rep.product_max.unwrap_or(0).max(d));
        if d > PRODUCT_BOUND {
            rep.violations.push(Violation::Product {
                corners: corners.clone(),
                diameter: d,
            });
        }
        rep.products.push(ProductRecord {
            corners,
            vertices: set.len(),
            factors,
            diameter: d,
        });
    }
    rep
}

/// Maximal intervals of the developed ball that split as a product of two
/// nontrivial factors, mapped into the Cayley ball. An interval splits when
/// its separating hyperplanes fall into two classes crossing each other
/// pairwise; it is kept only when it lies wholly inside the ball. One corner
/// ranges over the inner half of the ball, which meets every orbit of
/// intervals that fit.
pub fn product_intervals(ball: &CayleyBall) -> Vec<((String, String), Vec<usize>, (usize, usize))> {
    let dev = ball.developed();
    if dev.complex().dim() < 2 {
        return Vec::new();
    }
    let geo = Geometry::new(dev.clone());
    let hyper = geo.hyperplanes();
    let n = dev.vertex_count();
    let mut found: Vec<((String, String), Vec<usize>, (usize, usize))> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in (0..n).filter(|&a| 2 * dev.depth(a) <= dev.radius()) {
        let da = geo.dist_from(a);
        for b in (0..n).filter(|&b| b != a) {
            let sep = sym_diff(geo.halfspace_signature(a), geo.halfspace_signature(b));
            if sep.len() < 2 || sep.len() != da[b] as usize {
                continue;
            }
            // components of the non-crossing relation on `sep`
            let mut comp = vec![usize::MAX; sep.len()];
            let mut k = 0;
            for s in 0..sep.len() {
                if comp[s] != usize::MAX {
                    continue;
                }
                let mut stack = vec![s];
                comp[s] = k;
                while let Some(t) = stack.pop() {
                    for u in 0..sep.len() {
                        if comp[u] == usize::MAX && !hyper.cross(sep[t] as usize, sep[u] as usize) {
                            comp[u] = k;
                            stack.push(u);
                        }
                    }
                }
                k += 1;
            }
            if k < 2 {
                continue;
            }
            let in_a: Vec<u32> = sep.iter().zip(&comp).filter(|p| *p.1 == 0).map(|p| *p.0).collect();
            let interval = geo.interval(a, b);
            let sig_a = geo.halfspace_signature(a);
            let mut fa = BTreeSet::new();
            let mut fb = BTreeSet::new();
            for &w in &interval {
                let (pa, pb): (Vec<u32>, Vec<u32>) =
                    sym_diff(sig_a, geo.halfspace_signature(w)).into_iter().partition(|h| in_a.binary_search(h).is_ok());
                fa.insert(pa);
                fb.insert(pb);
            }
            if fa.len() * fb.len() != interval.len() {
                continue;
            }
            let mut set: Vec<usize> = interval.iter().map(|&w| ball.class_of(w)).collect();
            set.sort_unstable();
            set.dedup();
            if seen.insert(set.clone()) {
                let names = (dev.complex().vertex_name(a).to_string(), dev.complex().vertex_name(b).to_string());
                found.push((names, set, (in_a.len(), sep.len() - in_a.len())));
            }
        }
    }
    found.sort_by(|p, q| q.1.len().cmp(&p.1.len()).then_with(|| p.1.cmp(&q.1)));
    let mut kept: Vec<((String, String), Vec<usize>, (usize, usize))> = Vec::new();
    for f in found {
        if !kept.iter().any(|k| is_subset(&f.1, &k.1)) {
            kept.push(f);
        }
    }
    kept
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigonAudit {
    pub length: usize,
    pub squares: usize,
    pub hausdorff: u32,
}

/// Measures the Hausdorff distance in the cone-off between two geodesics of
/// the ball from `start` that bound a diagram without cone-cells.
pub fn audit_bigon(
    g: &ConeOffGraph,
    ball: &CayleyBall,
    start: usize,
    alpha: &[Dart],
    beta: &[Dart],
    budget: &SearchBudget,
) -> Result<BigonAudit, ConeOffError> {
    let trace = |w: &[Dart]| -> Option<Vec<usize>> {
        let mut out = vec![start];
        for &d in w {
            out.push(ball.step(*out.last().unwrap(), d)?);
        }
        Some(out)
    };
    let (Some(va), Some(vb)) = (trace(alpha), trace(beta)) else {
        return Err(ConeOffError::NoSquareBigon("a side leaves the ball".into()));
    };
    if va.last() != vb.last() {
        return Err(ConeOffError::NoSquareBigon("sides do not share endpoints".into()));
    }
    let d = ball.distances_from(start)[*va.last().unwrap()] as usize;
    if alpha.len() != d || beta.len() != d {
        return Err(ConeOffError::NoSquareBigon("a side is not geodesic".into()));
    }
    let p: &CubicalPresentation = ball.presentation();
    let mut darts = alpha.to_vec();
    darts.extend(beta.iter().rev().map(|d| d.inverse()));
    let w = Path::new(ball.project_vertex(start), darts);
    let diagram = match find_diagram(p, &w, budget) {
        Ok(Some(diagram)) => diagram,
        Ok(None) => return Err(ConeOffError::NoSquareBigon("sides are not homotopic".into())),
        Err(e) => return Err(ConeOffError::NoSquareBigon(e.to_string())),
    };
    if !diagram.cone_faces().is_empty() {
        return Err(ConeOffError::NoSquareBigon("least diagram has cone-cells".into()));
    }
    Ok(BigonAudit {
        length: d,
        squares: diagram.square_faces().len(),
        hausdorff: g.hausdorff(&va, &vb),
    })
}

/// The geodesic from `x` to `y` taking the least (or greatest) germ at each
/// step.
pub fn extreme_geodesic(ball: &CayleyBall, x: usize, y: usize, greatest: bool) -> Option<Vec<Dart>> {
    let to_y = ball.distances_from(y);
    if to_y[x] == u32::MAX {
        return None;
    }
    let mut out = Vec::new();
    let mut cur = x;
    while cur != y {
        let mut it = ball.neighbors(cur).iter().filter(|(_, w)| to_y[*w] + 1 == to_y[cur]);
        let &(g, w) = if greatest { it.last()? } else { it.next()? };
        out.push(g);
        cur = w;
    }
    Some(out)
}

/// Pairs of distinct extreme geodesics from the root to every vertex within
/// `max_len`.
pub fn bigon_candidates(ball: &CayleyBall, max_len: usize) -> Vec<(usize, Vec<Dart>, Vec<Dart>)> {
    let root = ball.root();
    let d = ball.distances_from(root);
    let mut out = Vec::new();
    for y in 0..ball.vertex_count() {
        if d[y] as usize > max_len || y == root {
            continue;
        }
        let (Some(a), Some(b)) = (extreme_geodesic(ball, root, y, false), extreme_geodesic(ball, root, y, true)) else {
            continue;
        };
        if a != b {
            out.push((root, a, b));
        }
    }
    out
}
