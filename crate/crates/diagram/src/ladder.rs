//! Padded ladders.
//!
//! A padded ladder is a diagram whose boundary splits as `P1 P2^-1` and which
//! decomposes as `R0 C1 R1 ... Cn Rn`: the `C_i` are cone-cells or vertices,
//! each `R_i` a square diagram (a pseudorectangle). With
//!
//! ```text
//! P1 = nu0 rho0 alpha1 rho1 ... alphan rhon
//! P2 = varrho0 gamma1 varrho1 ... gamman varrhon mu(n+1)
//! ∂C_i = mu_i alpha_i nu_i^-1 gamma_i^-1
//! ∂R_i = nu_i rho_i mu(i+1)^-1 varrho_i^-1
//! ```
//!
//! the seven conditions checked by [`PaddedLadder::conditions`] are: (1) the
//! boundary is `P1 P2^-1`; (2) the factorizations of `P1` and `P2`; (3) the
//! boundary of each `C_i`; (4) the boundary of each `R_i`, with the cells
//! partitioned among the `C_i` and `R_i`; (5) each `R_i` has no cone-cells;
//! (6) dual curves of `R_i` join `rho_i` to `varrho_i` and `nu_i` to
//! `mu(i+1)`; (7) no two dual curves of `R_{i-1}` leaving `mu_i` cross.
//!
//! The search tries every split of the boundary. A cone-cell meeting a side
//! only in vertices is attached at its first contact.

use std::collections::{HashMap, HashSet};

use cubsc_core::Dart;
use serde::Serialize;

use crate::diagram::{DiscDiagram, Owner};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rung {
    Cone(usize),
    Vertex(usize),
}

/// Indexing: `alpha[i]`, `gamma[i]` belong to `C_{i+1}`; `nu[i]`, `rho[i]`,
/// `varrho[i]` and `mu[i]` (which is `mu_{i+1}`) to `R_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PaddedLadder {
    /// Boundary position where `P1` starts.
    pub start: usize,
    pub p1: Vec<Dart>,
    pub p2: Vec<Dart>,
    pub rungs: Vec<Rung>,
    pub alpha: Vec<Vec<Dart>>,
    pub gamma: Vec<Vec<Dart>>,
    pub nu: Vec<Vec<Dart>>,
    pub rho: Vec<Vec<Dart>>,
    pub varrho: Vec<Vec<Dart>>,
    pub mu: Vec<Vec<Dart>>,
    pub regions: Vec<Vec<usize>>,
}

fn inv(p: &[Dart]) -> Vec<Dart> {
    p.iter().rev().map(|d| d.inverse()).collect()
}

fn cat(parts: &[&[Dart]]) -> Vec<Dart> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn cyclic_eq(a: &[Dart], b: &[Dart]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|r| (0..a.len()).all(|k| a[(r + k) % a.len()] == b[k]))
}

/// Darts of a closed path with inverse pairs cancelled, sorted.
fn reduced_chain(p: &[Dart]) -> Vec<Dart> {
    let mut count: HashMap<Dart, i64> = HashMap::new();
    for &d in p {
        let key = if d.rev { d.inverse() } else { d };
        *count.entry(key).or_default() += if d.rev { -1 } else { 1 };
    }
    let mut out = Vec::new();
    for (k, c) in count {
        for _ in 0..c.unsigned_abs() {
            out.push(if c > 0 { k } else { k.inverse() });
        }
    }
    out.sort_unstable();
    out
}

fn region_chain(d: &DiscDiagram, faces: &[usize]) -> Vec<Dart> {
    let darts: Vec<Dart> = faces.iter().flat_map(|&f| d.faces[f].darts.iter().copied()).collect();
    reduced_chain(&darts)
}

impl PaddedLadder {
    pub fn n(&self) -> usize {
        self.rungs.len()
    }

    pub fn cone_count(&self) -> usize {
        self.rungs.iter().filter(|r| matches!(r, Rung::Cone(_))).count()
    }

    pub fn horizontally_degenerate(&self, i: usize) -> bool {
        self.mu[i].is_empty() && self.nu[i].is_empty()
    }

    pub fn vertically_degenerate(&self, i: usize) -> bool {
        self.rho[i].is_empty() && self.varrho[i].is_empty()
    }

    /// `R_0` and `R_n` are vertically degenerate.
    pub fn is_ladder(&self) -> bool {
        self.vertically_degenerate(0) && self.vertically_degenerate(self.n())
    }

    fn region_boundary(&self, i: usize) -> Vec<Dart> {
        cat(&[&self.nu[i], &self.rho[i], &inv(&self.mu[i]), &inv(&self.varrho[i])])
    }

    /// Each of the seven defining conditions, evaluated independently.
    pub fn conditions(&self, d: &DiscDiagram) -> [bool; 7] {
        let n = self.n();
        let shapes_ok = self.alpha.len() == n
            && self.gamma.len() == n
            && [&self.nu, &self.rho, &self.varrho, &self.mu].iter().all(|v| v.len() == n + 1)
            && self.regions.len() == n + 1;
        if !shapes_ok {
            return [false; 7];
        }
        let mut c = [true; 7];

        let len = d.boundary.len();
        let rotated: Vec<Dart> = (0..len).map(|k| d.boundary[(self.start + k) % len.max(1)]).collect();
        c[0] = rotated == cat(&[&self.p1, &inv(&self.p2)]);

        let mut p1 = cat(&[&self.nu[0], &self.rho[0]]);
        let mut p2 = self.varrho[0].clone();
        for i in 0..n {
            p1.extend(&self.alpha[i]);
            p1.extend(&self.rho[i + 1]);
            p2.extend(&self.gamma[i]);
            p2.extend(&self.varrho[i + 1]);
        }
        p2.extend(&self.mu[n]);
        c[1] = p1 == self.p1 && p2 == self.p2;

        let mut used = vec![0usize; d.faces.len()];
        for (i, r) in self.rungs.iter().enumerate() {
            let cycle = cat(&[&self.mu[i], &self.alpha[i], &inv(&self.nu[i + 1]), &inv(&self.gamma[i])]);
            match *r {
                Rung::Cone(f) => {
                    if f >= d.faces.len() || !d.faces[f].cell.is_cone() {
                        c[2] = false;
                        continue;
                    }
                    used[f] += 1;
                    c[2] &= cyclic_eq(&d.faces[f].darts, &cycle);
                }
                Rung::Vertex(v) => {
                    c[2] &= cycle.is_empty();
                    // the vertex sits where P1 and P2 reach C_i
                    let mut a = cat(&[&self.nu[0], &self.rho[0]]);
                    let mut g = self.varrho[0].clone();
                    for k in 0..i {
                        a.extend(&self.alpha[k]);
                        a.extend(&self.rho[k + 1]);
                        g.extend(&self.gamma[k]);
                        g.extend(&self.varrho[k + 1]);
                    }
                    let at = |p: &[Dart]| p.last().map(|&x| d.head(x)).unwrap_or(d.tail(d.boundary[self.start % len.max(1)]));
                    let start_vertex = if len == 0 { d.base } else { d.tail(d.boundary[self.start % len]) };
                    let pa = if a.is_empty() { start_vertex } else { at(&a) };
                    let pg = if g.is_empty() { start_vertex } else { at(&g) };
                    c[2] &= pa == v && pg == v;
                }
            }
        }

        for i in 0..=n {
            let b = self.region_boundary(i);
            let closed = b.is_empty() || (0..b.len()).all(|k| d.head(b[k]) == d.tail(b[(k + 1) % b.len()]));
            let faces = &self.regions[i];
            for &f in faces {
                if f < d.faces.len() {
                    used[f] += 1;
                }
            }
            c[3] &= closed && faces.iter().all(|&f| f < d.faces.len()) && region_chain(d, faces) == reduced_chain(&b);
            c[4] &= faces.iter().all(|&f| f < d.faces.len() && d.faces[f].cell.is_square());
        }
        c[3] &= used.iter().all(|&u| u == 1);

        if c[3] && c[4] {
            for i in 0..=n {
                let (ok6, ok7) = self.check_curves(d, i);
                c[5] &= ok6;
                c[6] &= ok7;
            }
        } else {
            c[5] = false;
            c[6] = false;
        }
        c
    }

    pub fn holds(&self, d: &DiscDiagram) -> bool {
        self.conditions(d).iter().all(|&b| b)
    }

    /// Dual curves of `R_i`: (6) for region `i`, and (7) for the curves
    /// leaving its `mu` side.
    fn check_curves(&self, d: &DiscDiagram, i: usize) -> (bool, bool) {
        let b = self.region_boundary(i);
        // side labels: 0 nu, 1 rho, 2 mu, 3 varrho
        let mut label = Vec::with_capacity(b.len());
        for (s, len) in [self.nu[i].len(), self.rho[i].len(), self.mu[i].len(), self.varrho[i].len()].iter().enumerate() {
            label.extend(std::iter::repeat(s).take(*len));
        }
        let inside: HashSet<usize> = self.regions[i].iter().copied().collect();
        let owners = d.owners();
        let mut pos: HashMap<Dart, Vec<usize>> = HashMap::new();
        for (k, &x) in b.iter().enumerate() {
            pos.entry(x).or_default().push(k);
        }
        let mut partner = vec![usize::MAX; b.len()];
        let mut squares: Vec<Vec<(usize, usize)>> = vec![Vec::new(); b.len()];
        for k in 0..b.len() {
            if partner[k] != usize::MAX {
                continue;
            }
            let x = b[k];
            let mut trail = Vec::new();
            let end = if let Some(&k2) = pos.get(&x.inverse()).and_then(|v| v.iter().find(|&&j| partner[j] == usize::MAX && j != k)) {
                Some(k2)
            } else {
                let mut cur = x;
                let mut found = None;
                for _ in 0..=4 * d.faces.len() {
                    let Some(Owner::Face { face, pos: p }) = owners.get(&cur).copied() else { break };
                    if !inside.contains(&face) {
                        break;
                    }
                    trail.push((face, p % 2));
                    let opp = d.faces[face].darts[(p + 2) % 4];
                    if let Some(&k2) = pos.get(&opp).and_then(|v| v.iter().find(|&&j| j != k && partner[j] == usize::MAX)) {
                        found = Some(k2);
                        break;
                    }
                    cur = opp.inverse();
                }
                found
            };
            let Some(k2) = end else { return (false, false) };
            partner[k] = k2;
            partner[k2] = k;
            squares[k] = trail.clone();
            squares[k2] = trail;
        }
        let ok6 = (0..b.len()).all(|k| {
            let (a, z) = (label[k], label[partner[k]]);
            matches!((a, z), (0, 2) | (2, 0) | (1, 3) | (3, 1))
        });
        let mu_curves: Vec<&Vec<(usize, usize)>> = (0..b.len()).filter(|&k| label[k] == 2).map(|k| &squares[k]).collect();
        let mut ok7 = true;
        for a in 0..mu_curves.len() {
            for z in a + 1..mu_curves.len() {
                if mu_curves[a].iter().any(|(f, p)| mu_curves[z].iter().any(|(g, q)| f == g && p != q)) {
                    ok7 = false;
                }
            }
        }
        (ok6, ok7)
    }
}

/// How a cone-cell meets the two sides of a split.
struct Contact {
    face: usize,
    /// Start of `alpha` in `P1`, length; start of `gamma` in `P2`, length.
    a: usize,
    alen: usize,
    g: usize,
    glen: usize,
    mu: Vec<Dart>,
    nu: Vec<Dart>,
}

/// The contiguous run of `flags` (cyclic), as (start, len): `Some(None)` when
/// nothing is flagged, `None` when the flags form several runs.
fn single_run(flags: &[bool]) -> Option<Option<(usize, usize)>> {
    let m = flags.len();
    let starts: Vec<usize> = (0..m).filter(|&i| flags[i] && !flags[(i + m - 1) % m]).collect();
    match starts.len() {
        0 if flags.iter().any(|&f| f) => Some(Some((0, m))),
        0 => Some(None),
        1 => {
            let s = starts[0];
            Some(Some((s, (0..m).take_while(|&t| flags[(s + t) % m]).count())))
        }
        _ => None,
    }
}

/// Placements of a side of the cell: (face offset, length, side position).
fn placements(darts: &[Dart], index: &HashMap<Dart, usize>, verts: &[usize], d: &DiscDiagram) -> Option<Vec<(usize, usize, usize)>> {
    let m = darts.len();
    let on: Vec<bool> = darts.iter().map(|x| index.contains_key(x)).collect();
    match single_run(&on)? {
        Some((mut s, len)) => {
            if len == m {
                s = (0..m).min_by_key(|&t| index[&darts[t]]).unwrap_or(0);
            }
            let k0 = index[&darts[s]];
            if (0..len).any(|t| index[&darts[(s + t) % m]] != k0 + t) {
                return None;
            }
            Some(vec![(s, len, k0)])
        }
        None => Some(
            (0..m)
                .filter_map(|j| verts.iter().position(|&u| u == d.tail(darts[j])).map(|k| (j, 0, k)))
                .collect(),
        ),
    }
}

fn contact(
    d: &DiscDiagram,
    f: usize,
    in_p1: &HashMap<Dart, usize>,
    in_p2inv: &HashMap<Dart, usize>,
    pv: &[usize],
    rv: &[usize],
    p2len: usize,
) -> Option<Contact> {
    let darts = &d.faces[f].darts;
    let m = darts.len();
    let alphas = placements(darts, in_p1, pv, d)?;
    // gamma^-1 runs along P2^-1, whose vertices are `rv`
    let gammas = placements(darts, in_p2inv, rv, d)?;
    for &(fa, alen, a) in &alphas {
        for &(fg, glen, k0) in &gammas {
            let og = (fg + m - fa) % m;
            let og = if og == 0 && alen > 0 { m } else { og };
            if og < alen || og + glen > m {
                continue;
            }
            let nu_inv: Vec<Dart> = (alen..og).map(|t| darts[(fa + t) % m]).collect();
            let mu: Vec<Dart> = (og + glen..m).map(|t| darts[(fa + t) % m]).collect();
            return Some(Contact {
                face: f,
                a,
                alen,
                g: p2len - k0 - glen,
                glen,
                mu,
                nu: inv(&nu_inv),
            });
        }
    }
    None
}

/// A padded-ladder decomposition of `d`, if one exists.
pub fn is_padded_ladder(d: &DiscDiagram) -> Option<PaddedLadder> {
    search(d, false)
}

/// A decomposition with `R_0` and `R_n` vertically degenerate.
pub fn is_ladder(d: &DiscDiagram) -> Option<PaddedLadder> {
    search(d, true)
}

fn search(d: &DiscDiagram, ladder: bool) -> Option<PaddedLadder> {
    let len = d.boundary.len();
    if len == 0 {
        let e = vec![Vec::new()];
        return Some(PaddedLadder {
            start: 0,
            p1: Vec::new(),
            p2: Vec::new(),
            rungs: Vec::new(),
            alpha: Vec::new(),
            gamma: Vec::new(),
            nu: e.clone(),
            rho: e.clone(),
            varrho: e.clone(),
            mu: e,
            regions: vec![Vec::new()],
        });
    }
    for s in 0..len {
        for l in 0..=len {
            if let Some(found) = try_split(d, s, l, ladder) {
                return Some(found);
            }
        }
    }
    None
}

fn try_split(d: &DiscDiagram, s: usize, l: usize, ladder: bool) -> Option<PaddedLadder> {
    let len = d.boundary.len();
    let p1: Vec<Dart> = (0..l).map(|k| d.boundary[(s + k) % len]).collect();
    let rest: Vec<Dart> = (l..len).map(|k| d.boundary[(s + k) % len]).collect();
    let p2 = inv(&rest);
    let start_v = d.tail(d.boundary[s]);
    let mut pv = vec![start_v];
    pv.extend(p1.iter().map(|&x| d.head(x)));
    let mut rv = vec![d.tail(rest.first().copied().unwrap_or(d.boundary[s]))];
    rv.extend(rest.iter().map(|&x| d.head(x)));
    let in_p1: HashMap<Dart, usize> = p1.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let in_p2inv: HashMap<Dart, usize> = rest.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    if in_p1.len() != p1.len() || in_p2inv.len() != rest.len() {
        return None;
    }

    let mut contacts = Vec::new();
    for f in d.cone_faces() {
        contacts.push(contact(d, f, &in_p1, &in_p2inv, &pv, &rv, p2.len())?);
    }
    contacts.sort_by_key(|c| (c.a, c.g));
    for w in contacts.windows(2) {
        if w[0].a + w[0].alen > w[1].a || w[0].g + w[0].glen > w[1].g {
            return None;
        }
    }
    let first_a = contacts.first().map_or(l, |c| c.a);
    let last_g = contacts.last().map_or(0, |c| c.g + c.glen);

    for head_vertex in [false, true] {
        for tail_vertex in [false, true] {
            // nu0 is a prefix of P1 and mu(n+1) a suffix of P2
            let t0_max = if head_vertex { 0 } else { first_a };
            let t1_max = if tail_vertex { 0 } else { p2.len() - last_g.min(p2.len()) };
            for t0 in 0..=t0_max {
                for t1 in 0..=t1_max {
                    if let Some(pl) = assemble(d, s, &p1, &p2, &contacts, head_vertex, tail_vertex, t0, t1) {
                        if (!ladder || pl.is_ladder()) && pl.holds(d) {
                            return Some(pl);
                        }
                    }
                }
            }
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    d: &DiscDiagram,
    s: usize,
    p1: &[Dart],
    p2: &[Dart],
    contacts: &[Contact],
    head_vertex: bool,
    tail_vertex: bool,
    t0: usize,
    t1: usize,
) -> Option<PaddedLadder> {
    // rung intervals along P1 and P2
    let mut rungs = Vec::new();
    let mut iv: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut alpha = Vec::new();
    let mut gamma = Vec::new();
    let mut cone_mu: Vec<Vec<Dart>> = Vec::new();
    let mut cone_nu: Vec<Vec<Dart>> = Vec::new();
    let start_v = d.tail(d.boundary[s]);
    if head_vertex {
        rungs.push(Rung::Vertex(start_v));
        iv.push((0, 0, 0, 0));
        alpha.push(Vec::new());
        gamma.push(Vec::new());
        cone_mu.push(Vec::new());
        cone_nu.push(Vec::new());
    }
    for c in contacts {
        rungs.push(Rung::Cone(c.face));
        iv.push((c.a, c.alen, c.g, c.glen));
        alpha.push(p1[c.a..c.a + c.alen].to_vec());
        gamma.push(p2[c.g..c.g + c.glen].to_vec());
        cone_mu.push(c.mu.clone());
        cone_nu.push(c.nu.clone());
    }
    if tail_vertex {
        let end_v = p1.last().map_or(start_v, |&x| d.head(x));
        rungs.push(Rung::Vertex(end_v));
        iv.push((p1.len(), 0, p2.len(), 0));
        alpha.push(Vec::new());
        gamma.push(Vec::new());
        cone_mu.push(Vec::new());
        cone_nu.push(Vec::new());
    }
    let n = rungs.len();
    let mut nu = Vec::with_capacity(n + 1);
    let mut rho = Vec::with_capacity(n + 1);
    let mut varrho = Vec::with_capacity(n + 1);
    let mut mu = Vec::with_capacity(n + 1);
    let p2_end = p2.len().checked_sub(t1)?;
    for i in 0..=n {
        let (a_from, g_from) = if i == 0 { (t0, 0) } else { (iv[i - 1].0 + iv[i - 1].1, iv[i - 1].2 + iv[i - 1].3) };
        let (a_to, g_to) = if i == n { (p1.len(), p2_end) } else { (iv[i].0, iv[i].2) };
        if a_from > a_to || g_from > g_to {
            return None;
        }
        nu.push(if i == 0 { p1[..t0].to_vec() } else { cone_nu[i - 1].clone() });
        rho.push(p1[a_from..a_to].to_vec());
        varrho.push(p2[g_from..g_to].to_vec());
        mu.push(if i == n { p2[p2_end..].to_vec() } else { cone_mu[i].clone() });
    }
    let mut pl = PaddedLadder {
        start: s,
        p1: p1.to_vec(),
        p2: p2.to_vec(),
        rungs,
        alpha,
        gamma,
        nu,
        rho,
        varrho,
        mu,
        regions: Vec::new(),
    };
    for i in 0..=n {
        pl.regions.push(region_faces(d, &pl.region_boundary(i))?);
    }
    Some(pl)
}

/// Faces enclosed by a closed path, by flooding from its darts.
fn region_faces(d: &DiscDiagram, b: &[Dart]) -> Option<Vec<usize>> {
    let owners = d.owners();
    let on: HashSet<Dart> = b.iter().copied().collect();
    let cut: HashSet<usize> = b.iter().map(|x| x.edge).collect();
    let mut inside = HashSet::new();
    let mut stack = Vec::new();
    for &x in b {
        if on.contains(&x.inverse()) {
            continue;
        }
        match owners.get(&x) {
            Some(Owner::Face { face, .. }) => {
                if d.faces[*face].cell.is_cone() {
                    return None;
                }
                if inside.insert(*face) {
                    stack.push(*face);
                }
            }
            _ => return None,
        }
    }
    while let Some(f) = stack.pop() {
        for &y in &d.faces[f].darts {
            if cut.contains(&y.edge) {
                continue;
            }
            match owners.get(&y.inverse()) {
                Some(Owner::Face { face, .. }) if d.faces[*face].cell.is_square() => {
                    if inside.insert(*face) {
                        stack.push(*face);
                    }
                }
                _ => return None,
            }
        }
    }
    let mut out: Vec<usize> = inside.into_iter().collect();
    out.sort_unstable();
    Some(out)
}
