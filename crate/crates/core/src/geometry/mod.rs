//! Exact planar geometry kernel.

mod arrangement;
mod line;
mod point;
mod polygon;
pub mod scalar;

pub use arrangement::{arrangement_faces, arrangement_faces_capped};
pub use line::{line_intersection, HalfLine, Line, Side};
pub use point::{
    exact_cross, on_segment, orientation, segments_cross_properly, segments_intersect,
    Orientation, Point, Segment,
};
pub(crate) use arrangement::sort_faces;
pub(crate) use point::cross_sign;
pub use polygon::{clip_convex_by_halfplane, ConvexRegion, Containment, SimplePolygon};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("line coefficients A and B are both zero")]
    DegenerateLine,
    #[error("half-line direction is zero")]
    DegenerateHalfLine,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon repeats a vertex")]
    RepeatedVertex,
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("region is not convex")]
    NotConvex,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("cell budget of {limit} exceeded")]
    CellBudgetExceeded { limit: usize },
}
