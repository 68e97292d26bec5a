//! Local moves on disc diagrams: square cancellation, absorption of squares
//! into cone-cells, hexagon moves, and the budgeted `reduce` driver.

use std::collections::HashMap;

use cubsc_core::util::UnionFind;
use cubsc_core::{CubeComplex, CubicalPresentation, Dart};

use crate::diagram::{Cell, DiscDiagram, Face, Owner};
use crate::frontier::swap_images;
use crate::search::{find_diagram, SearchBudget};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum MoveError {
    #[error("no 3-cube of X carries the three squares at the site")]
    NoCube,
    #[error("square cannot be absorbed into the cone-cell")]
    NotAbsorbable,
    #[error("invalid site: {0}")]
    InvalidSite(String),
    #[error("budget exhausted; best diagram has complexity {:?}", best.complexity())]
    BudgetExceeded { best: Box<DiscDiagram> },
}

fn rotate(v: &[Dart], k: usize) -> Vec<Dart> {
    (0..v.len()).map(|i| v[(k + i) % v.len()]).collect()
}

/// Removes `drop` faces and identifies each pair of darts in `zip`, which
/// must have equal images. Returns `None` if the result is not a disc
/// diagram.
fn zip_faces(p: &CubicalPresentation, d: &DiscDiagram, drop: &[usize], zip: &[(Dart, Dart)]) -> Option<DiscDiagram> {
    let mut euf = UnionFind::new(d.edges.len());
    let mut vuf = UnionFind::new(d.vertices.len());
    for &(a, b) in zip {
        if d.image(a) != d.image(b) {
            return None;
        }
        euf.union(a.edge, b.edge);
        vuf.union(d.tail(a), d.tail(b));
        vuf.union(d.head(a), d.head(b));
    }
    let (ecls, _) = euf.classes();
    let (vcls, nv) = vuf.classes();
    // representative edge per class: the least index
    let mut rep: HashMap<usize, usize> = HashMap::new();
    for e in 0..d.edges.len() {
        rep.entry(ecls[e]).or_insert(e);
    }
    let fix = |x: &Dart| Dart::new(rep[&ecls[x.edge]], x.rev);
    let mut vertices = vec![0; nv];
    for v in 0..d.vertices.len() {
        vertices[vcls[v]] = d.vertices[v];
    }
    let mut edges = d.edges.clone();
    for e in &mut edges {
        e.src = vcls[e.src];
        e.dst = vcls[e.dst];
    }
    let faces: Vec<Face> = d
        .faces
        .iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, f)| Face {
            cell: f.cell.clone(),
            darts: f.darts.iter().map(fix).collect(),
        })
        .collect();
    let boundary: Vec<Dart> = d.boundary.iter().map(fix).collect();
    let mut out = DiscDiagram {
        vertices,
        edges,
        faces,
        base: vcls[d.base],
        boundary,
    };
    out.compact();
    if out.boundary.is_empty() {
        // everything folded away
        out = DiscDiagram::point(out.vertices[out.base]);
    }
    out.validate(p).ok()?;
    Some(out)
}

/// Pairs of squares glued along an edge that are mirror images across it.
pub fn cancellable_pairs(d: &DiscDiagram) -> Vec<(usize, usize, usize)> {
    let owners = d.owners();
    let mut out = Vec::new();
    for e in 0..d.edges.len() {
        let a = Dart::new(e, false);
        let (Some(Owner::Face { face: s, pos: i }), Some(Owner::Face { face: t, pos: j })) =
            (owners.get(&a).copied(), owners.get(&a.inverse()).copied())
        else {
            continue;
        };
        if s == t {
            continue;
        }
        if let (Cell::Square { image: x }, Cell::Square { image: y }) = (&d.faces[s].cell, &d.faces[t].cell) {
            if x != y {
                continue;
            }
            let sd = rotate(&d.faces[s].darts, i);
            let td = rotate(&d.faces[t].darts, j);
            if (1..4).all(|k| d.image(td[k]) == d.image(sd[4 - k]).inverse()) {
                out.push((e, s, t));
            }
        }
    }
    out
}

/// Cancels the mirror pair of squares across edge `e`.
pub fn cancel_pair(p: &CubicalPresentation, d: &DiscDiagram, e: usize) -> Option<DiscDiagram> {
    let (_, s, t) = cancellable_pairs(d).into_iter().find(|&(f, _, _)| f == e)?;
    let owners = d.owners();
    let a = Dart::new(e, false);
    let Some(Owner::Face { pos: i, .. }) = owners.get(&a).copied() else { return None };
    let Some(Owner::Face { pos: j, .. }) = owners.get(&a.inverse()).copied() else { return None };
    let sd = rotate(&d.faces[s].darts, i);
    let td = rotate(&d.faces[t].darts, j);
    let zip: Vec<(Dart, Dart)> = (1..4).map(|k| (td[k], sd[4 - k].inverse())).collect();
    zip_faces(p, d, &[s, t], &zip)
}

/// Absorbs square face `s` into cone face `c` across two consecutive darts
/// of `c` whose middle vertex meets no other edge.
pub fn absorb_square(p: &CubicalPresentation, d: &DiscDiagram, c: usize, s: usize) -> Result<DiscDiagram, MoveError> {
    let Cell::Cone { relator, start, word } = &d.faces.get(c).ok_or(MoveError::NotAbsorbable)?.cell else {
        return Err(MoveError::NotAbsorbable);
    };
    if !d.faces.get(s).is_some_and(|f| f.cell.is_square()) {
        return Err(MoveError::NotAbsorbable);
    }
    let rel = &p.relators[*relator];
    let y = rel.complex();
    let cd = &d.faces[c].darts;
    let sd = &d.faces[s].darts;
    let n = cd.len();
    let degree = vertex_degrees(d);
    for k in 0..n {
        let (ck, ck1) = (cd[k], cd[(k + 1) % n]);
        let m = d.head(ck);
        if degree[m] != 2 || m == d.base {
            continue;
        }
        let Some(i) = (0..4).find(|&i| sd[i] == ck1.inverse() && sd[(i + 1) % 4] == ck.inverse()) else {
            continue;
        };
        let g = sd[(i + 2) % 4];
        let h = sd[(i + 3) % 4];
        let (wk, wk1) = (word[k], word[(k + 1) % n]);
        let Some((gy, hy)) = swap_images(y, wk, wk1) else {
            return Err(MoveError::NotAbsorbable);
        };
        if rel.map.dart(gy) != d.image(g) || rel.map.dart(hy) != d.image(h) {
            return Err(MoveError::NotAbsorbable);
        }
        let mut out = d.clone();
        let mut new_darts = Vec::with_capacity(n);
        let mut new_word = Vec::with_capacity(n);
        let mut new_start = *start;
        for t in 0..n {
            if t == k {
                new_darts.extend([g, h]);
                new_word.extend([gy, hy]);
            } else if t != (k + 1) % n {
                new_darts.push(cd[t]);
                new_word.push(word[t]);
            }
        }
        if k + 1 == n {
            // the pair wrapped around; the first dart is now `h`
            new_darts.rotate_right(1);
            new_word.rotate_right(1);
            new_start = y.tail(new_word[0]);
        }
        out.faces[c] = Face {
            cell: Cell::Cone {
                relator: *relator,
                start: new_start,
                word: new_word,
            },
            darts: new_darts,
        };
        out.faces.remove(s);
        out.compact();
        out.validate(p).map_err(|e| MoveError::InvalidSite(e.to_string()))?;
        return Ok(out);
    }
    Err(MoveError::NotAbsorbable)
}

fn vertex_degrees(d: &DiscDiagram) -> Vec<usize> {
    let mut deg = vec![0; d.vertices.len()];
    for e in &d.edges {
        deg[e.src] += 1;
        deg[e.dst] += 1;
    }
    deg
}

/// Interior vertices of degree three whose three corners are in squares.
pub fn hexagon_sites(d: &DiscDiagram) -> Vec<usize> {
    let sigma = d.rotation();
    let owners = d.owners();
    let on_boundary: std::collections::HashSet<usize> = d.boundary_vertices().into_iter().collect();
    let mut out = Vec::new();
    for v in 0..d.vertices.len() {
        if on_boundary.contains(&v) {
            continue;
        }
        let darts = d.rotation_at(&sigma, v);
        if darts.len() != 3 {
            continue;
        }
        // the corner after dart e lies in the face owning sigma(e)
        let all_squares = darts.iter().all(|&e| match owners.get(&sigma[&e]) {
            Some(Owner::Face { face, .. }) => d.faces[*face].cell.is_square(),
            _ => false,
        });
        let distinct: std::collections::HashSet<usize> = darts
            .iter()
            .filter_map(|e| match owners.get(&sigma[e]) {
                Some(Owner::Face { face, .. }) => Some(*face),
                _ => None,
            })
            .collect();
        if all_squares && distinct.len() == 3 {
            out.push(v);
        }
    }
    out
}

/// Replaces the three squares around interior vertex `v` by the other three
/// squares of the 3-cube they span in `X`.
pub fn hexagon_move(p: &CubicalPresentation, d: &DiscDiagram, v: usize) -> Result<DiscDiagram, MoveError> {
    if !hexagon_sites(d).contains(&v) {
        return Err(MoveError::InvalidSite(format!("vertex {v}")));
    }
    let x: &CubeComplex = &p.base;
    let sigma = d.rotation();
    let owners = d.owners();
    let spokes = d.rotation_at(&sigma, v);
    // square i contains e_i^-1 followed by e_{i+1}
    let mut faces = Vec::new();
    let mut u = Vec::new();
    let mut w = Vec::new();
    for i in 0..3 {
        let next = spokes[(i + 1) % 3];
        let Some(Owner::Face { face, pos }) = owners.get(&next).copied() else { unreachable!() };
        let fd = rotate(&d.faces[face].darts, (pos + 3) % 4);
        debug_assert_eq!(fd[0], spokes[i].inverse());
        faces.push(face);
        u.push(fd[2]);
        w.push(fd[3]);
    }
    let germs: Vec<Dart> = spokes.iter().map(|&e| d.image(e)).collect();
    let xv = d.vertices[v];
    let mut found = None;
    for k in x.corners_at(xv) {
        if k.cube.dim != 3 {
            continue;
        }
        let axes: Option<Vec<usize>> = germs
            .iter()
            .map(|g| (0..3).find(|&a| x.corner_dart(k.cube, k.bits, a) == *g))
            .collect();
        if let Some(ax) = axes {
            if ax[0] != ax[1] && ax[1] != ax[2] && ax[0] != ax[2] {
                found = Some((*k, ax));
                break;
            }
        }
    }
    let Some((corner, ax)) = found else { return Err(MoveError::NoCube) };
    let far = corner.bits ^ 7;
    let mut out = d.clone();
    let centre = out.vertices.len();
    out.vertices.push(x.corner_vertex(corner.cube, far));
    // spoke to q_i = head(u_i), which differs from v along axes i and i+1
    let mut to_q = Vec::new();
    for i in 0..3 {
        let q = d.head(u[i]);
        let img = x.corner_dart(corner.cube, far, ax[(i + 2) % 3]);
        if x.head(img) != d.vertices[q] {
            return Err(MoveError::InvalidSite("far corner mismatch".into()));
        }
        let e = out.edges.len();
        let (src, dst) = if img.rev { (q, centre) } else { (centre, q) };
        out.edges.push(crate::diagram::DEdge {
            src,
            dst,
            image: img.edge,
        });
        to_q.push(Dart::new(e, img.rev));
    }
    // hexagon read in the face sense: u0 w0 u2 w2 u1 w1
    let new_faces = [
        vec![w[0], u[2], to_q[2].inverse(), to_q[0]],
        vec![w[2], u[1], to_q[1].inverse(), to_q[2]],
        vec![w[1], u[0], to_q[0].inverse(), to_q[1]],
    ];
    let mut kept: Vec<Face> = out
        .faces
        .iter()
        .enumerate()
        .filter(|(i, _)| !faces.contains(i))
        .map(|(_, f)| f.clone())
        .collect();
    for darts in new_faces {
        let imgs: Vec<Dart> = darts
            .iter()
            .map(|&dd| if dd.edge < d.edges.len() { d.image(dd) } else { out.image(dd) })
            .collect();
        let Some((k, _, _)) = x.square_at(imgs[1], imgs[0].inverse()) else {
            return Err(MoveError::NoCube);
        };
        kept.push(Face {
            cell: Cell::Square { image: k.cube.index },
            darts,
        });
    }
    out.faces = kept;
    out.compact();
    out.validate(p).map_err(|e| MoveError::InvalidSite(e.to_string()))?;
    Ok(out)
}

/// Adjacent (cone, square) face pairs for absorption attempts.
fn absorb_candidates(d: &DiscDiagram) -> Vec<(usize, usize)> {
    let owners = d.owners();
    let mut out = Vec::new();
    for c in d.cone_faces() {
        for &dd in &d.faces[c].darts {
            if let Some(Owner::Face { face, .. }) = owners.get(&dd.inverse()) {
                if d.faces[*face].cell.is_square() && !out.contains(&(c, *face)) {
                    out.push((c, *face));
                }
            }
        }
    }
    out
}

/// Applies cancellations, absorptions and hexagon moves, and compares with a
/// fresh search on the boundary, until nothing lowers the complexity.
pub fn reduce(p: &CubicalPresentation, d: &DiscDiagram, budget: usize) -> Result<DiscDiagram, MoveError> {
    let mut cur = d.clone();
    let mut spent = 0usize;
    let mut tick = |cur: &DiscDiagram| -> Result<(), MoveError> {
        spent += 1;
        if spent > budget {
            Err(MoveError::BudgetExceeded {
                best: Box::new(cur.clone()),
            })
        } else {
            Ok(())
        }
    };
    'outer: loop {
        for (e, _, _) in cancellable_pairs(&cur) {
            tick(&cur)?;
            if let Some(next) = cancel_pair(p, &cur, e) {
                cur = next;
                continue 'outer;
            }
        }
        for (c, s) in absorb_candidates(&cur) {
            tick(&cur)?;
            if let Ok(next) = absorb_square(p, &cur, c, s) {
                cur = next;
                continue 'outer;
            }
        }
        for v in hexagon_sites(&cur) {
            tick(&cur)?;
            if let Ok(moved) = hexagon_move(p, &cur, v) {
                if let Some((e, _, _)) = cancellable_pairs(&moved).first() {
                    if let Some(next) = cancel_pair(p, &moved, *e) {
                        cur = next;
                        continue 'outer;
                    }
                }
            }
        }
        tick(&cur)?;
        let start = cur.vertices[cur.base];
        let w = cubsc_core::Path::new(start, cur.boundary_image());
        if let Ok(Some(fresh)) = find_diagram(p, &w, &SearchBudget::default()) {
            if fresh.complexity() < cur.complexity() {
                cur = fresh;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}
