//! Coned-off balls of generalized Cayley graphs and finite audits of their
//! coarse geometry: projection bounds, thin square bigons, four-point
//! hyperbolicity, quasiconvexity of relator elevations and growth of
//! elements.

pub mod audit;
pub mod contact;
pub mod delta;
pub mod graph;
pub mod growth;
pub mod join;

pub use audit::{audit_bigon, audit_projection, BigonAudit, ProjectionReport, Violation};
pub use contact::{quasiconvexity_audit, ContactGraph, QuasiconvexityReport};
pub use delta::{four_point_delta, DeltaReport};
pub use graph::{build_cone_off, Cone, ConeKind, ConeOffGraph};
pub use growth::{growth_probe, GrowthReport, Space, Verdict};
pub use join::join_support_check;

#[derive(thiserror::Error, Debug)]
pub enum ConeOffError {
    #[error("ball of radius {radius} is too small: {needed} steps needed")]
    BallTooSmall { needed: usize, radius: usize },
    #[error("no square bigon: {0}")]
    NoSquareBigon(String),
}
