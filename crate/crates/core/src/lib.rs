//! Cographic toric rings of finite multigraphs.
//!
//! From a multigraph the crate builds the cone of nonnegative oriented cycles,
//! its semigroup and ring presentation, and classifies the singularity of the
//! associated affine toric variety. It also implements age and lattice
//! criteria for cyclic quotient singularities and the local analysis of
//! compactified Jacobians at boundary points.

pub mod arith;
pub mod cographic;
pub mod cones;
pub mod error;
pub mod graph;
pub mod homology;
pub mod jacobian;
pub mod reid_tai;
pub mod report;

pub use error::{Error, Result};
pub use graph::{Graph, Orientation, OrientedEdge};
