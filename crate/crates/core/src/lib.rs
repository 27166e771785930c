//! Canonical parameterization and comparison of closed plane curves.
//!
//! Contours are closed polylines. They are standardized over the
//! shape-preserving transformations (orientation, start point, scale,
//! translation, rotation), resampled by a canonical rule, and compared
//! point-by-point with an L2 distance. The [`learn`] module searches the
//! resampling family for the member that best separates labeled classes.

pub mod error;
pub mod geometry;
pub mod ingest;
pub mod learn;
pub mod metric;
pub mod normalize;
pub mod point;
pub mod reparam;
pub mod synth;

pub use error::{Error, Result};
pub use geometry::Contour;
pub use point::Point;
