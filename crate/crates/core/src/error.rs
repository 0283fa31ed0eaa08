use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The two chords are parallel (p + q + 2r is a multiple of n) and never meet.
    #[error("parallel chords: n={n}, p+q+2r \u{2261} 0 (mod n)")]
    ParallelLines { n: u32 },

    /// A shape descriptor whose reconstructed vertex set would collapse to
    /// fewer than four distinct vertices.
    #[error("degenerate shape descriptor (p,q,r)=({p},{q},{r}) for n={n}")]
    DegenerateTriplet { n: u32, p: u32, q: u32, r: i64 },

    /// Ordered vertex tuple that is simple but traverses the quadrilateral
    /// backwards, so the path-length extraction is not defined on it.
    #[error("quadruplet is not admissible")]
    NotAdmissible,

    /// Arc-length comparison between two descriptors that do not share a radius.
    #[error("descriptors lie on different radii ({left} vs {right})")]
    NotCocyclic { left: f64, right: f64 },

    /// Two consecutive radius values too close to split and too far to merge.
    #[error("ambiguous radius grouping near sqrt_radius={sqrt_radius} (gap {gap:e})")]
    AmbiguousGrouping { sqrt_radius: f64, gap: f64 },

    /// An interior point (other than the center) claimed more than 7 incident
    /// lines, which is impossible; signals a grouping or equivalence bug.
    #[error("interior multiplicity {multiplicity} exceeds 7 at sqrt_radius={sqrt_radius}")]
    MultiplicityBound { multiplicity: u32, sqrt_radius: f64 },

    #[error("embedded reference table is corrupt: {0}")]
    CorruptReferenceData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
