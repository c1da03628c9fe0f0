//! Seeded random point sets and exact conversions used by the acceptance
//! suite in `tests/acceptance.rs`.

use num_bigint::BigInt;
use pivotlab::{PointSet, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on [-10, 10].
pub fn coord(r: &mut ChaCha8Rng) -> f64 {
    r.gen_range(-10.0..=10.0)
}

/// Uniform points until the x values are not all equal.
pub fn random_set(r: &mut ChaCha8Rng, n: usize) -> PointSet<f64> {
    loop {
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (coord(r), coord(r))).collect();
        if let Ok(s) = PointSet::from_pairs(pts) {
            return s;
        }
    }
}

/// Uniform points sorted by x, rejecting repeated x.
pub fn random_sorted_set(r: &mut ChaCha8Rng, n: usize) -> PointSet<f64> {
    loop {
        let mut pts: Vec<(f64, f64)> = (0..n).map(|_| (coord(r), coord(r))).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        if pts.windows(2).all(|w| w[0].0 < w[1].0) {
            return PointSet::from_pairs(pts).expect("distinct x");
        }
    }
}

pub fn to_exact(s: &PointSet<f64>) -> PointSet<Rational> {
    s.map_scalar(|v| Rational::from_float(*v).expect("finite"))
        .expect("same shape")
}

/// Exact copy of `s` scaled by the power of two `2^shift` that makes every
/// coordinate an integer. Slopes are unchanged; intercepts scale by `2^shift`.
pub fn to_exact_integers(s: &PointSet<f64>) -> (PointSet<Rational>, Rational) {
    let exact = to_exact(s);
    let shift = exact
        .points()
        .iter()
        .flat_map(|p| [&p.x, &p.y])
        .map(|v| v.denom().trailing_zeros().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let factor = Rational::from_integer(BigInt::from(1) << shift);
    (exact.scale(&factor).expect("nonzero factor"), factor)
}

/// `|a - b|` relative to the larger magnitude, floored at 1.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}
