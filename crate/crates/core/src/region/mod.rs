//! Where pivots can lie: barycentric sign regions, convex hulls, and
//! exhaustive repetition sweeps checking both.

mod barycentric;
mod hull;
mod sweep;

pub use barycentric::{barycentric_coords, sign_pattern, BarycentricCoords, Sign, SignPattern, Triangle, SIGN_TOL};
pub use hull::{convex_hull, point_in_hull, ConvexHull, HullClass};
pub use sweep::{
    extreme_labels, four_point_region_sweep, hull_bound_check, three_point_line_check, Classification, RegionReport,
    SweepKind, SweepRecord, Violation,
};
