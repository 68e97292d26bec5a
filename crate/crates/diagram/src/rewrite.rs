//! Length-reducing rewriting of paths in `X` with optional diagram recording.
//!
//! Two kinds of rewrite are used. A dart is pushed forward across squares
//! until it meets its own reverse, which removes a pair of edges dual to one
//! hyperplane; iterating this turns a path into a geodesic of the universal
//! cover. A subpath that, after pushing some of its darts to the front, lifts
//! to a relator `Y_i` from `y0` to `y1` is replaced by a shortest path from
//! `y0` to `y1` in `Y_i` when that is strictly shorter.

use std::collections::HashMap;
use std::sync::Arc;

use cubsc_core::{CubeComplex, CubicalPresentation, Dart};

use crate::frontier::{swap_images, Frontier};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("rewrite budget of {budget} steps exhausted")]
pub struct RewriteBudget {
    pub budget: usize,
}

/// Breadth-first distances and parent darts in a relator's 1-skeleton.
#[derive(Debug)]
pub(crate) struct YTree {
    pub dist: Vec<u32>,
    pub parent: Vec<Option<Dart>>,
}

/// Per-presentation lookup tables shared across rewrites.
#[derive(Debug)]
pub struct RelatorTables {
    fibers: Vec<Vec<Vec<usize>>>,
    trees: std::sync::Mutex<HashMap<(usize, usize), Arc<YTree>>>,
    flat: bool,
}

impl RelatorTables {
    pub fn new(p: &CubicalPresentation) -> RelatorTables {
        let nx = p.base.vertex_count();
        let fibers = p
            .relators
            .iter()
            .map(|r| {
                let mut f = vec![Vec::new(); nx];
                for y in 0..r.complex().vertex_count() {
                    f[r.map.vertex(y)].push(y);
                }
                f
            })
            .collect();
        RelatorTables {
            fibers,
            trees: std::sync::Mutex::new(HashMap::new()),
            flat: p.base.square_count() == 0,
        }
    }

    pub(crate) fn tree(&self, p: &CubicalPresentation, r: usize, y0: usize) -> Arc<YTree> {
        if let Some(t) = self.trees.lock().unwrap().get(&(r, y0)) {
            return t.clone();
        }
        let y = p.relators[r].complex();
        let n = y.vertex_count();
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![None; n];
        dist[y0] = 0;
        let mut queue = std::collections::VecDeque::from([y0]);
        while let Some(u) = queue.pop_front() {
            for &d in y.out_darts(u) {
                let w = y.head(d);
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        let t = Arc::new(YTree { dist, parent });
        self.trees.lock().unwrap().insert((r, y0), t.clone());
        t
    }

    /// A shortest path in relator `r` from `y0` to `y1`.
    pub(crate) fn shortest(&self, p: &CubicalPresentation, r: usize, y0: usize, y1: usize) -> Vec<Dart> {
        let t = self.tree(p, r, y0);
        let y = p.relators[r].complex();
        let mut out = Vec::new();
        let mut v = y1;
        while v != y0 {
            let d = t.parent[v].expect("relator is connected");
            out.push(d);
            v = y.tail(d);
        }
        out.reverse();
        out
    }
}

/// A planned replacement through relator `relator`.
#[derive(Clone, Debug)]
struct Shell {
    at: usize,
    /// Swap positions (absolute) that bring the lifted darts together.
    swaps: Vec<usize>,
    len: usize,
    relator: usize,
    y0: usize,
    q: Vec<Dart>,
    s: Vec<Dart>,
}

/// Move counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct MoveCounts {
    pub folds: usize,
    pub swaps: usize,
    pub cones: usize,
}

/// A path under rewriting, optionally recording a diagram.
#[derive(Clone, Debug)]
pub struct Rewriter<'a> {
    p: &'a CubicalPresentation,
    tables: &'a RelatorTables,
    start: usize,
    word: Vec<Dart>,
    frontier: Option<Frontier>,
    pub counts: MoveCounts,
    steps: usize,
    budget: usize,
}

impl<'a> Rewriter<'a> {
    pub fn new(
        p: &'a CubicalPresentation,
        tables: &'a RelatorTables,
        start: usize,
        word: &[Dart],
        record: bool,
        budget: usize,
    ) -> Rewriter<'a> {
        Rewriter {
            p,
            tables,
            start,
            word: word.to_vec(),
            frontier: record.then(|| Frontier::new(&p.base, start, word)),
            counts: MoveCounts::default(),
            steps: 0,
            budget,
        }
    }

    fn x(&self) -> &'a CubeComplex {
        &self.p.base
    }

    pub fn base(&self) -> &'a CubeComplex {
        &self.p.base
    }

    pub fn word(&self) -> &[Dart] {
        &self.word
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn frontier(&self) -> Option<&Frontier> {
        self.frontier.as_ref()
    }

    pub fn into_frontier(self) -> Option<Frontier> {
        self.frontier
    }

    fn tick(&mut self) -> Result<(), RewriteBudget> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(RewriteBudget { budget: self.budget })
        } else {
            Ok(())
        }
    }

    fn fold(&mut self, k: usize) {
        if let Some(f) = &mut self.frontier {
            f.fold(k);
        }
        self.word.drain(k..k + 2);
        self.counts.folds += 1;
    }

    fn swap(&mut self, k: usize) {
        let (a, b) = swap_images(self.x(), self.word[k], self.word[k + 1]).expect("swap checked");
        let x = self.p.base.as_ref();
        if let Some(f) = &mut self.frontier {
            let ok = f.swap(x, k);
            debug_assert!(ok);
        }
        self.word[k] = a;
        self.word[k + 1] = b;
        self.counts.swaps += 1;
    }

    /// Removes every pair of edges dual to a common hyperplane; the result is
    /// a geodesic in the universal cover of `X`.
    pub fn geodesify(&mut self) -> Result<(), RewriteBudget> {
        let x = self.x();
        if self.tables.flat {
            let mut i = 0;
            while i + 1 < self.word.len() {
                if self.word[i + 1] == self.word[i].inverse() {
                    self.tick()?;
                    self.fold(i);
                    i = i.saturating_sub(1);
                } else {
                    i += 1;
                }
            }
            return Ok(());
        }
        loop {
            // the closest cancelling pair first, so that no square is added
            // where a plain backtrack would do
            let n = self.word.len();
            let mut best: Option<(usize, usize)> = None;
            for i in 0..n {
                let mut cur = self.word[i];
                for j in i + 1..n {
                    if best.is_some_and(|(a, b)| b - a <= j - i) {
                        break;
                    }
                    if self.word[j] == cur.inverse() {
                        best = Some((i, j));
                        break;
                    }
                    match swap_images(x, cur, self.word[j]) {
                        Some((_, moved)) => cur = moved,
                        None => break,
                    }
                }
            }
            let Some((i, j)) = best else { return Ok(()) };
            self.tick()?;
            for k in i..j - 1 {
                self.swap(k);
            }
            self.fold(j - 1);
        }
    }

    fn plan_literal(&self, i: usize, r: usize, y0: usize, best: &mut Option<(usize, Shell)>) {
        let rel = &self.p.relators[r];
        let y = rel.complex();
        let mut q = Vec::new();
        let mut v = y0;
        let mut ys = Vec::new();
        for &d in &self.word[i..] {
            match rel.map.lift_dart(v, d) {
                Some(l) => {
                    q.push(l);
                    v = y.head(l);
                    ys.push(v);
                }
                None => break,
            }
        }
        if q.is_empty() {
            return;
        }
        let tree = self.tables.tree(self.p, r, y0);
        for t in (1..=q.len()).rev() {
            let dist = tree.dist[ys[t - 1]] as usize;
            if dist < t {
                let gain = t - dist;
                if best.as_ref().map_or(true, |(g, _)| gain > *g) {
                    *best = Some((
                        gain,
                        Shell {
                            at: i,
                            swaps: Vec::new(),
                            len: t,
                            relator: r,
                            y0,
                            q: q[..t].to_vec(),
                            s: Vec::new(),
                        },
                    ));
                }
            }
        }
    }

    /// Pulls liftable darts to the front one at a time, starting at `i`.
    fn plan_shuffled(&self, i: usize, r: usize, y0: usize, best: &mut Option<(usize, Shell)>) {
        let x = self.x();
        let rel = &self.p.relators[r];
        let y = rel.complex();
        let mut rem: Vec<Dart> = self.word[i..].to_vec();
        let mut swaps = Vec::new();
        let mut swaps_at = Vec::new();
        let mut q = Vec::new();
        let mut ys = Vec::new();
        let mut v = y0;
        let mut placed = 0;
        while placed < rem.len() {
            let mut found = None;
            for k in placed..rem.len() {
                let mut cur = rem[k];
                let mut moved = Vec::with_capacity(k - placed);
                let mut ok = true;
                for l in (placed..k).rev() {
                    match swap_images(x, rem[l], cur) {
                        Some((first, second)) => {
                            moved.push((l, second));
                            cur = first;
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                if let Some(lift) = rel.map.lift_dart(v, cur) {
                    found = Some((k, cur, moved, lift));
                    break;
                }
            }
            let Some((k, cur, moved, lift)) = found else { break };
            for &(l, second) in &moved {
                rem[l + 1] = second;
                swaps.push(i + l);
            }
            rem[placed] = cur;
            let _ = k;
            q.push(lift);
            v = y.head(lift);
            ys.push(v);
            placed += 1;
            swaps_at.push(swaps.len());
        }
        if q.is_empty() {
            return;
        }
        let tree = self.tables.tree(self.p, r, y0);
        for t in (1..=q.len()).rev() {
            let dist = tree.dist[ys[t - 1]] as usize;
            if dist < t {
                let gain = t - dist;
                if best.as_ref().map_or(true, |(g, _)| gain > *g) {
                    *best = Some((
                        gain,
                        Shell {
                            at: i,
                            swaps: swaps[..swaps_at[t - 1]].to_vec(),
                            len: t,
                            relator: r,
                            y0,
                            q: q[..t].to_vec(),
                            s: Vec::new(),
                        },
                    ));
                }
            }
        }
    }

    fn plan(&self) -> Option<Shell> {
        let x = self.x();
        let mut best: Option<(usize, Shell)> = None;
        for i in 0..self.word.len() {
            let v = x.tail(self.word[i]);
            for r in 0..self.p.relators.len() {
                for &y0 in &self.tables.fibers[r][v] {
                    if self.tables.flat {
                        self.plan_literal(i, r, y0, &mut best);
                    } else {
                        self.plan_shuffled(i, r, y0, &mut best);
                    }
                }
            }
        }
        best.map(|(_, mut s)| {
            let rel = &self.p.relators[s.relator];
            let end = rel.complex().head(*s.q.last().unwrap());
            s.s = self.tables.shortest(self.p, s.relator, s.y0, end);
            s
        })
    }

    fn apply(&mut self, shell: Shell) {
        for &k in &shell.swaps {
            self.swap(k);
        }
        let rel = &self.p.relators[shell.relator];
        let s_images: Vec<Dart> = shell.s.iter().map(|&d| rel.map.dart(d)).collect();
        if let Some(f) = &mut self.frontier {
            f.cone(
                &self.p.base,
                shell.at,
                shell.len,
                shell.relator,
                shell.y0,
                &shell.q,
                &shell.s,
                &s_images,
            );
        }
        self.word.splice(shell.at..shell.at + shell.len, s_images);
        self.counts.cones += 1;
    }

    /// One strictly shortening replacement through a relator, if any exists.
    pub fn shell_step(&mut self) -> Result<bool, RewriteBudget> {
        match self.plan() {
            Some(s) => {
                self.tick()?;
                self.apply(s);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Alternates geodesic reduction and relator replacements to a fixpoint.
    pub fn run(&mut self) -> Result<(), RewriteBudget> {
        loop {
            self.geodesify()?;
            if !self.shell_step()? {
                return Ok(());
            }
        }
    }

    /// All strictly shortening replacements available now, one per start
    /// position and lift, for search.
    pub(crate) fn candidates(&self) -> Vec<Rewriter<'a>> {
        let x = self.x();
        let mut out = Vec::new();
        for i in 0..self.word.len() {
            let v = x.tail(self.word[i]);
            for r in 0..self.p.relators.len() {
                for &y0 in &self.tables.fibers[r][v] {
                    let mut best = None;
                    if self.tables.flat {
                        self.plan_literal(i, r, y0, &mut best);
                    } else {
                        self.plan_shuffled(i, r, y0, &mut best);
                    }
                    if let Some((_, mut s)) = best {
                        let rel = &self.p.relators[s.relator];
                        let end = rel.complex().head(*s.q.last().unwrap());
                        s.s = self.tables.shortest(self.p, s.relator, s.y0, end);
                        let mut next = self.clone();
                        next.apply(s);
                        out.push(next);
                    }
                }
            }
        }
        out
    }
}
