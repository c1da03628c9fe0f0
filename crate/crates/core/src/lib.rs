//! Pivot points of least-squares regression lines.
//!
//! Repeating a single datum any number of times rotates the least-squares
//! line about a fixed point, the datum's *pivot*. This crate computes those
//! pivots (including under arbitrary per-point repetition counts), locates
//! them relative to the data with barycentric sign regions and convex hulls,
//! iterates the pseudopivot map that arises for collinear data, and carries a
//! brute-force oracle that re-derives every fit from literally repeated rows.
//!
//! All numerics are generic over [`Scalar`], implemented for `f32`, `f64` and
//! exact [`Rational`]. The aliases below name the common instantiations.

pub mod error;
pub mod geometry;
pub mod oracle;
pub mod pseudopivot;
pub mod region;
pub mod scalar;

pub use error::{Error, Result};
pub use geometry::{
    centric_transform, fit_weighted_line, pivot_point, pivot_point_weighted, transform_t, CentricPoint, Label,
    Multiplicities, PivotResult, Point, PointSet, RegressionLine,
};
pub use scalar::{parse_rational, Scalar};

/// Arbitrary-precision rational used for exact computation.
pub type Rational = num_rational::BigRational;

pub type Point64 = Point<f64>;
pub type PointSet64 = PointSet<f64>;
pub type PivotResult64 = PivotResult<f64>;
pub type RegressionLine64 = RegressionLine<f64>;

pub type PointQ = Point<Rational>;
pub type PointSetQ = PointSet<Rational>;
pub type PivotResultQ = PivotResult<Rational>;

pub type PseudopivotState64 = pseudopivot::PseudopivotState<f64>;
pub type PseudopivotStateQ = pseudopivot::PseudopivotState<Rational>;
