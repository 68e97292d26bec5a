//! Cube complexes, developed covers, cubical presentations and piece
//! certification.

pub mod ball;
pub mod complex;
pub mod dot;
pub mod elevation;
pub mod families;
pub mod geometry;
pub mod json;
pub mod map;
pub mod path;
pub mod pieces;
pub mod presentation;
pub mod util;

pub use ball::{develop_ball, BallError, DevelopedBall, Hyperplanes};
pub use complex::{ComplexBuilder, ComplexError, Corner, CubeComplex, CubeRef, Dart};
pub use geometry::{Geometry, Subcomplex};
pub use map::CubicalMap;
pub use path::Path;
pub use presentation::{CubicalPresentation, Relator, Systole};
