//! Diagram search, Dehn reduction and null-homotopy decisions.

use cubsc_core::{CubicalPresentation, Path};

use crate::diagram::{Complexity, DiscDiagram};
use crate::rewrite::{RelatorTables, Rewriter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Rewrite steps per reduction.
    pub steps: usize,
    /// Search nodes for the improvement phase of `find_diagram`.
    pub nodes: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            steps: 100_000,
            nodes: 2_000,
        }
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("path is not closed")]
    NotClosed,
    #[error("budget exhausted after {steps} steps")]
    BudgetExceeded { steps: usize },
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("budget exhausted; partial reduction has length {}", partial.len())]
    BudgetExceeded { partial: Path },
}

/// Outcome of a null-homotopy test.
#[derive(Clone, Debug)]
pub enum NullHomotopy {
    Yes(Box<DiscDiagram>),
    No,
    Unknown,
}

impl NullHomotopy {
    pub fn is_yes(&self) -> bool {
        matches!(self, NullHomotopy::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, NullHomotopy::No)
    }
}

/// Reduces `w` by backtrack removal, square shuffles and relator
/// replacements until none applies. Never lengthens.
pub fn dehn_reduce(p: &CubicalPresentation, w: &Path, budget: &SearchBudget) -> Result<Path, ReduceError> {
    let tables = RelatorTables::new(p);
    dehn_reduce_with(p, &tables, w, budget)
}

pub fn dehn_reduce_with(
    p: &CubicalPresentation,
    tables: &RelatorTables,
    w: &Path,
    budget: &SearchBudget,
) -> Result<Path, ReduceError> {
    let mut rw = Rewriter::new(p, tables, w.start, &w.darts, false, budget.steps);
    match rw.run() {
        Ok(()) => Ok(Path::new(w.start, rw.word().to_vec())),
        Err(_) => Err(ReduceError::BudgetExceeded {
            partial: Path::new(w.start, rw.word().to_vec()),
        }),
    }
}

pub fn is_null_homotopic(p: &CubicalPresentation, w: &Path, budget: &SearchBudget) -> NullHomotopy {
    let tables = RelatorTables::new(p);
    is_null_homotopic_with(p, &tables, w, budget)
}

pub fn is_null_homotopic_with(
    p: &CubicalPresentation,
    tables: &RelatorTables,
    w: &Path,
    budget: &SearchBudget,
) -> NullHomotopy {
    if w.end(&p.base) != w.start {
        return NullHomotopy::No;
    }
    let mut rw = Rewriter::new(p, tables, w.start, &w.darts, true, budget.steps);
    if rw.run().is_err() {
        return NullHomotopy::Unknown;
    }
    if rw.word().is_empty() {
        let d = rw.into_frontier().and_then(|f| f.finish(&p.base)).expect("closed frontier");
        NullHomotopy::Yes(Box::new(d))
    } else {
        // a nonempty geodesic of the universal cover of X with no replacement
        NullHomotopy::No
    }
}

struct Best {
    key: Option<(Complexity, String)>,
    diagram: Option<DiscDiagram>,
}

impl Best {
    fn offer(&mut self, d: DiscDiagram) {
        let key = (d.complexity(), d.canonical_form());
        if self.key.as_ref().map_or(true, |k| key < *k) {
            self.key = Some(key);
            self.diagram = Some(d);
        }
    }
}

/// A disc diagram with boundary path `w`.
///
/// Returns `Ok(None)` when no diagram exists. With no relators a nonempty
/// geodesic of the universal cover is never closed; otherwise the answer is
/// `None` once every sequence of shortening replacements has been tried
/// without reaching the empty word, which decides the question under the same
/// hypothesis as `is_null_homotopic`. Among the diagrams reached within budget the least complexity wins,
/// ties broken by canonical form.
pub fn find_diagram(
    p: &CubicalPresentation,
    w: &Path,
    budget: &SearchBudget,
) -> Result<Option<DiscDiagram>, SearchError> {
    let tables = RelatorTables::new(p);
    find_diagram_with(p, &tables, w, budget)
}

pub fn find_diagram_with(
    p: &CubicalPresentation,
    tables: &RelatorTables,
    w: &Path,
    budget: &SearchBudget,
) -> Result<Option<DiscDiagram>, SearchError> {
    let x = &p.base;
    if !w.is_valid(x) || w.end(x) != w.start {
        return Err(SearchError::NotClosed);
    }
    let mut root = Rewriter::new(p, tables, w.start, &w.darts, true, budget.steps);
    root.geodesify()
        .map_err(|_| SearchError::BudgetExceeded { steps: budget.steps })?;
    let mut best = Best { key: None, diagram: None };
    if root.word().is_empty() {
        best.offer(root.into_frontier().unwrap().finish(x).unwrap());
        return Ok(best.diagram);
    }
    if p.relators.is_empty() {
        return Ok(None);
    }
    let mut greedy = root.clone();
    let greedy_cones = match greedy.run() {
        Ok(()) if greedy.word().is_empty() => {
            let d = greedy.into_frontier().unwrap().finish(x).unwrap();
            let c = d.complexity().0;
            best.offer(d);
            Some(c)
        }
        _ => None,
    };
    // iterative deepening on the number of cone-cells
    let mut nodes = 0usize;
    let max_depth = match greedy_cones {
        Some(c) => c.saturating_sub(1),
        None => root.word().len(),
    };
    let mut complete = false;
    for depth in 1..=max_depth {
        let mut st = Dfs::default();
        dfs(&root, depth, budget.nodes, &mut nodes, &mut best, &mut st);
        if st.found || st.exhausted {
            break;
        }
        if !st.cut {
            // no branch reached the depth bound, so deeper passes repeat this one
            complete = !st.stalled;
            break;
        }
    }
    match best.diagram {
        Some(d) => Ok(Some(d)),
        None if complete => Ok(None),
        None => Err(SearchError::BudgetExceeded { steps: budget.steps }),
    }
}

#[derive(Default)]
struct Dfs {
    found: bool,
    /// The node budget ran out.
    exhausted: bool,
    /// Some branch was stopped by the depth bound.
    cut: bool,
    /// Some branch was stopped by the step budget.
    stalled: bool,
}

fn dfs(node: &Rewriter, depth: usize, node_budget: usize, nodes: &mut usize, best: &mut Best, st: &mut Dfs) {
    if st.exhausted {
        return;
    }
    let candidates = node.candidates();
    if depth == 0 {
        st.cut |= !candidates.is_empty();
        return;
    }
    for mut next in candidates {
        *nodes += 1;
        if *nodes > node_budget {
            st.exhausted = true;
            return;
        }
        if next.geodesify().is_err() {
            st.stalled = true;
            continue;
        }
        if next.word().is_empty() {
            let x = next.base();
            if let Some(d) = next.into_frontier().and_then(|f| f.finish(x)) {
                best.offer(d);
                st.found = true;
            }
            continue;
        }
        dfs(&next, depth - 1, node_budget, nodes, best, st);
    }
}
