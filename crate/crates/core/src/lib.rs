//! Exact combinatorial engine for cluster categories of type A_n and
//! A_infinity.
//!
//! Objects are arcs between points of a cyclically ordered set; cluster
//! tilting subcategories are triangulations. The crate computes indices
//! (g-vectors) by the zig-zag construction, c-vectors, dimension vectors,
//! and the decomposition of positive c-vectors into root systems.

pub mod cvector;
pub mod decomposition;
pub mod error;
pub mod fzoracle;
pub mod homindex;
pub mod json;
pub mod render;
pub mod triangulation;
pub mod zmodel;

pub use cvector::{CoVector, SignedCVector};
pub use error::{Error, Result};
pub use homindex::{index, index_bar, zigzag, KVector, ZigZagPath};
pub use triangulation::{Family, Side, Tail, Triangulation};
pub use zmodel::{Arc, ClosurePoint, Vertex, ZModel};
