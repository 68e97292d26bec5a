//! Outside-in construction of disc diagrams.
//!
//! The frontier is the boundary of the still unfilled hole, traversed in the
//! same sense as the diagram boundary. Its darts are not yet used by any face.
//! Three moves shrink the hole: folding a backtrack, swapping two consecutive
//! darts across a square, and replacing a subpath that lifts to a relator by
//! another path in that relator through a new cone-cell.

use cubsc_core::util::UnionFind;
use cubsc_core::{CubeComplex, Dart};

use crate::diagram::{Cell, DEdge, DiscDiagram, Face};

#[derive(Clone, Debug)]
pub struct Frontier {
    vimg: Vec<usize>,
    vuf: UnionFind,
    edges: Vec<DEdge>,
    euf: UnionFind,
    faces: Vec<Face>,
    boundary: Vec<Dart>,
    base: usize,
    anchor: usize,
    front: Vec<Dart>,
}

impl Frontier {
    /// A frontier equal to the closed path `word` from `start` in `x`.
    pub fn new(x: &CubeComplex, start: usize, word: &[Dart]) -> Frontier {
        let mut f = Frontier {
            vimg: vec![start],
            vuf: UnionFind::new(1),
            edges: Vec::new(),
            euf: UnionFind::new(0),
            faces: Vec::new(),
            boundary: Vec::new(),
            base: 0,
            anchor: 0,
            front: Vec::new(),
        };
        let mut cur = 0;
        for (k, &d) in word.iter().enumerate() {
            let next = if k + 1 == word.len() { 0 } else { f.new_vertex(x.head(d)) };
            let nd = f.new_dart(cur, next, d);
            f.boundary.push(nd);
            cur = next;
        }
        f.front = f.boundary.clone();
        f
    }

    fn new_vertex(&mut self, image: usize) -> usize {
        self.vimg.push(image);
        self.vuf.push()
    }

    fn new_dart(&mut self, from: usize, to: usize, image: Dart) -> Dart {
        let (src, dst) = if image.rev { (to, from) } else { (from, to) };
        self.edges.push(DEdge {
            src,
            dst,
            image: image.edge,
        });
        self.euf.push();
        Dart::new(self.edges.len() - 1, image.rev)
    }

    fn tail(&self, d: Dart) -> usize {
        let e = &self.edges[d.edge];
        if d.rev {
            e.dst
        } else {
            e.src
        }
    }

    fn head(&self, d: Dart) -> usize {
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

    pub fn len(&self) -> usize {
        self.front.len()
    }

    pub fn is_empty(&self) -> bool {
        self.front.is_empty()
    }

    pub fn word(&self) -> Vec<Dart> {
        self.front.iter().map(|&d| self.image(d)).collect()
    }

    pub fn complexity(&self) -> (usize, usize) {
        let c = self.faces.iter().filter(|f| f.cell.is_cone()).count();
        (c, self.faces.len() - c)
    }

    /// Identifies `front[k+1]` with the reverse of `front[k]`.
    pub fn fold(&mut self, k: usize) {
        let d = self.front[k];
        let e = self.front[k + 1];
        debug_assert_eq!(self.image(e), self.image(d).inverse());
        let (ed, ee) = (self.edges[d.edge], self.edges[e.edge]);
        self.vuf.union(ed.src, ee.src);
        self.vuf.union(ed.dst, ee.dst);
        self.euf.union(d.edge, e.edge);
        let t = self.tail(d);
        self.front.drain(k..k + 2);
        if self.front.is_empty() {
            self.anchor = t;
        }
    }

    /// Swaps `front[k], front[k+1]` across the square spanned at their common
    /// vertex. Returns false when no such square exists.
    pub fn swap(&mut self, x: &CubeComplex, k: usize) -> bool {
        let d1 = self.front[k];
        let d2 = self.front[k + 1];
        let Some((first, second)) = swap_images(x, self.image(d1), self.image(d2)) else {
            return false;
        };
        let Some((corner, aa, ab)) = x.square_at(self.image(d1).inverse(), self.image(d2)) else {
            return false;
        };
        let bits = corner.bits;
        let z_img = x.corner_vertex(corner.cube, bits ^ (1 << aa) ^ (1 << ab));
        let a_far = x.corner_dart(corner.cube, bits ^ (1 << ab), aa);
        let u = self.tail(d1);
        let w = self.head(d2);
        let z = self.new_vertex(z_img);
        let big_a = self.new_dart(w, z, a_far);
        let b_far = x.corner_dart(corner.cube, bits ^ (1 << aa), ab);
        let big_b = self.new_dart(u, z, b_far);
        debug_assert_eq!(self.image(big_b), first);
        debug_assert_eq!(self.image(big_a.inverse()), second);
        self.faces.push(Face {
            cell: Cell::Square {
                image: corner.cube.index,
            },
            darts: vec![d1, d2, big_a, big_b.inverse()],
        });
        self.front.splice(k..k + 2, [big_b, big_a.inverse()]);
        true
    }

    /// Replaces `front[k..k+len]`, which lifts to relator `relator` along
    /// `q` from `y0`, by a new path whose lift is `s` (from the same `y0`).
    /// `s_images` is the image of `s` in `X`.
    #[allow(clippy::too_many_arguments)]
    pub fn cone(
        &mut self,
        x: &CubeComplex,
        k: usize,
        len: usize,
        relator: usize,
        y0: usize,
        q: &[Dart],
        s: &[Dart],
        s_images: &[Dart],
    ) {
        debug_assert_eq!(q.len(), len);
        let start = self.tail(self.front[k]);
        let end = self.head(self.front[k + len - 1]);
        let mut new_darts = Vec::new();
        if s.is_empty() {
            self.vuf.union(start, end);
        } else {
            let mut cur = start;
            for (i, &d) in s_images.iter().enumerate() {
                let next = if i + 1 == s_images.len() {
                    end
                } else {
                    self.new_vertex(x.head(d))
                };
                let nd = self.new_dart(cur, next, d);
                new_darts.push(nd);
                cur = next;
            }
        }
        let mut darts: Vec<Dart> = self.front[k..k + len].to_vec();
        darts.extend(new_darts.iter().rev().map(|d| d.inverse()));
        let mut word = q.to_vec();
        word.extend(s.iter().rev().map(|d| d.inverse()));
        self.faces.push(Face {
            cell: Cell::Cone {
                relator,
                start: y0,
                word,
            },
            darts,
        });
        self.front.splice(k..k + len, new_darts);
        if self.front.is_empty() {
            self.anchor = start;
        }
    }

    /// The finished diagram, once the hole is closed.
    pub fn finish(mut self, x: &CubeComplex) -> Option<DiscDiagram> {
        if !self.front.is_empty() {
            return None;
        }
        let (vclass, nv) = self.vuf.classes();
        let (eclass, ne) = self.euf.classes();
        let mut vertices = vec![usize::MAX; nv];
        let mut edges = vec![
            DEdge {
                src: 0,
                dst: 0,
                image: 0
            };
            ne
        ];
        for (e, ed) in self.edges.iter().enumerate() {
            let c = eclass[e];
            edges[c] = DEdge {
                src: vclass[ed.src],
                dst: vclass[ed.dst],
                image: ed.image,
            };
            vertices[vclass[ed.src]] = x.source(ed.image);
            vertices[vclass[ed.dst]] = x.target(ed.image);
        }
        for v in 0..self.vimg.len() {
            let c = vclass[v];
            if vertices[c] == usize::MAX {
                vertices[c] = self.vimg[v];
            }
        }
        let fix = |d: &Dart| Dart::new(eclass[d.edge], d.rev);
        for f in &mut self.faces {
            f.darts = f.darts.iter().map(fix).collect();
        }
        let boundary: Vec<Dart> = self.boundary.iter().map(fix).collect();
        let base = if boundary.is_empty() { vclass[self.anchor] } else { vclass[self.base] };
        let mut d = DiscDiagram {
            vertices,
            edges,
            faces: self.faces,
            boundary,
            base,
        };
        d.compact();
        Some(d)
    }
}

/// Images after swapping `d1 d2` across a square at `head(d1)`: the new first
/// dart is parallel to `d2` and the new second parallel to `d1`.
pub fn swap_images(x: &CubeComplex, d1: Dart, d2: Dart) -> Option<(Dart, Dart)> {
    let (corner, aa, ab) = x.square_at(d1.inverse(), d2)?;
    let bits = corner.bits;
    let a_far = x.corner_dart(corner.cube, bits ^ (1 << ab), aa);
    let b_far = x.corner_dart(corner.cube, bits ^ (1 << aa), ab);
    Some((b_far, a_far.inverse()))
}
