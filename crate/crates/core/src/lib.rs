//! Enumeration and classification of the intersection points made by all
//! chords (sides and diagonals) of a regular n-gon.
//!
//! Every intersection point lies on a circle centered at the origin. Instead
//! of building the quartic-size graph, the library enumerates the cubic-size
//! set of shape descriptors (p, q, r), groups them by orbit radius, partitions
//! each orbit into point families, and reads off cardinalities and
//! multiplicities. A brute-force oracle and an embedded reference table
//! validate the whole pipeline.
//!
//! Quick tour:
//! - [`geometry`]: path-length maps, quadruplet/descriptor conversions, the
//!   radius and arc-length kernel, the equivalence test.
//! - [`enumerate`]: the five triple-loop generators and the center orbit.
//! - [`orbits`]: radius grouping, class partition, multiplicities, summaries.
//! - [`oracle`]: pairwise line-intersection ground truth for n <= 30.
//! - [`refdata`]: embedded reference counts for 3 <= n <= 30.

pub mod enumerate;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod orbits;
pub mod refdata;

pub use error::{Error, Result};
