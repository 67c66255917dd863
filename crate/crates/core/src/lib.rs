//! Flat-folding crease patterns treated as plane graphs.
//!
//! The crate builds crease patterns on the infinite sheet and on bounded
//! convex sheets, checks local flat-foldability (Maekawa, Kawasaki, face
//! convexity), evaluates fold maps, certifies global foldability through a
//! combinatorial layer order, and provides the constructions for trees, dual
//! orthotrees, disks and squares.

pub mod conn;
pub mod fixtures;
pub mod foldcheck;
pub mod geom;
pub mod graph;
pub mod io;
pub mod layers;
pub mod orthotree;
pub mod outer;
pub mod pattern;
pub mod render;
pub mod sheet;
pub mod treefold;

pub use geom::{Isometry2, Orientation, Point2, TurnAngle, Wedge, EPS_ANG, EPS_LEN};
pub use pattern::{CreasePattern, VertexId};
