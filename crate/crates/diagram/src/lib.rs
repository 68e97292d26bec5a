//! Disc diagrams over cubical presentations: search, reduction moves,
//! curvature, boundary features, ladders, triangle classification and
//! Cayley balls.

pub mod cayley;
pub mod classify;
pub mod diagram;
pub mod features;
pub mod frontier;
pub mod ladder;
pub mod moves;
pub mod rectify;
pub mod rewrite;
pub mod samples;
pub mod search;
pub mod svg;

pub use diagram::{Cell, DiagramBuilder, DiagramError, DiscDiagram};
pub use search::{
    dehn_reduce, find_diagram, is_null_homotopic, NullHomotopy, ReduceError, SearchBudget, SearchError,
};
