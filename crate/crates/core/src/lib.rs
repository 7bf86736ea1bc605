//! Exact two-dimensional analogue of Minkowski's question-mark function.
//!
//! The triangle `1 >= x >= y >= 0` is partitioned two ways: by Farey sums of
//! vertex vectors (`farey`) and by barycenters (`bary`). Following the same
//! sequence of subtriangles in both partitions defines the Farey-Bary map
//! (`delta`). Eventually periodic sequences land on cubic points in the Farey
//! partition and on rational points in the barycentric one (`algebraic`);
//! `singular` measures how fast the two sets of triangles shrink relative to
//! each other.
//!
//! Everything is computed with arbitrary-precision integers and rationals.

pub mod algebraic;
pub mod bary;
pub mod cli;
pub mod delta;
pub mod error;
pub mod exact;
pub mod farey;
pub mod matrix;
pub mod point;
pub mod render;
pub mod sequence;
pub mod singular;

pub use error::{Error, Result};
pub use exact::{LatticeVec, PlanePoint, Rational, TriangleState};
pub use matrix::Mat3;
pub use sequence::{CaseTag, CompressedStep, ExpansionSequence, Termination};
