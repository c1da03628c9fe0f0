//! Brute-force ground truth.
//!
//! Multiplicities are expanded into literal repeated rows of the design matrix
//! `A = [x 1]`, and the line comes from the raw 2×2 normal equations
//! `AᵀA p = Aᵀy` solved by Cramer's rule. None of this shares code with
//! [`crate::geometry::fit_weighted_line`], so the two can check each other.

use crate::error::{Error, Result};
use crate::geometry::{
    pivot_point, pivot_point_weighted, Label, Multiplicities, PivotResult, Point, PointSet, RegressionLine,
};
use crate::scalar::Scalar;

/// Distance at the largest repetition count that the limit check applies to.
pub const CONVERGENCE_K: u64 = 1_000_000;
pub const CONVERGENCE_TOL: f64 = 1e-5;

/// The literal over-determined system: one `(x, 1)` row per repeated datum.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedSystem<T> {
    pub rows: Vec<[T; 2]>,
    pub y: Vec<T>,
}

impl<T> ExpandedSystem<T> {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Rows are ordered by label, then by repetition index.
pub fn expand_multiplicities<T: Scalar>(s: &PointSet<T>, d: &Multiplicities) -> Result<ExpandedSystem<T>> {
    if d.len() != s.len() {
        return Err(Error::Shape(format!(
            "{} multiplicities for {} points",
            d.len(),
            s.len()
        )));
    }
    let mut rows = Vec::with_capacity(d.total() as usize);
    let mut y = Vec::with_capacity(d.total() as usize);
    for (p, &w) in s.points().iter().zip(d.as_slice()) {
        for _ in 0..w {
            rows.push([p.x.clone(), T::one()]);
            y.push(p.y.clone());
        }
    }
    Ok(ExpandedSystem { rows, y })
}

pub fn fit_expanded<T: Scalar>(e: &ExpandedSystem<T>) -> Result<RegressionLine<T>> {
    // AᵀA = [[Σx², Σx], [Σx, N]],  Aᵀy = [Σxy, Σy]
    let x = || e.rows.iter().map(|r| &r[0]);
    let one = || e.rows.iter().map(|r| &r[1]);
    let sxx = T::dot(x().zip(x()));
    let sx = T::dot(x().zip(one()));
    let count = T::dot(one().zip(one()));
    let sxy = T::dot(x().zip(&e.y));
    let sy = T::dot(one().zip(&e.y));
    let syy = T::dot(e.y.iter().zip(&e.y));
    let det = sxx.clone() * count.clone() - sx.clone() * sx.clone();
    let distinct = e.rows.iter().any(|r| r[0] != e.rows[0][0]);
    if !distinct || det.is_zero() {
        return Err(Error::DegenerateX);
    }
    let slope = (count * sxy.clone() - sx.clone() * sy.clone()) / det.clone();
    let intercept = (sxx * sy.clone() - sx * sxy.clone()) / det;
    let sse = if T::EXACT {
        // equals the residual sum at the normal-equation solution, without
        // summing residuals whose denominators are as wide as det²
        syy - slope.clone() * sxy - intercept.clone() * sy
    } else {
        e.rows
            .iter()
            .zip(&e.y)
            .map(|(r, y)| {
                let res = slope.clone() * r[0].clone() + intercept.clone() - y.clone();
                res.clone() * res
            })
            .fold(T::zero(), |a, b| a + b)
    };
    Ok(RegressionLine { slope, intercept, sse })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The pivot is at infinity, so there is nothing to measure.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub label: Label,
    /// Perpendicular distance from the pivot to the fit with `S_label`
    /// repeated `k` extra times, indexed by `k`.
    pub distances: Vec<f64>,
    pub max_distance: f64,
    /// Largest absolute coordinate among the data and the pivot.
    pub scale: f64,
    pub tol: f64,
    pub verdict: Verdict,
}

/// Fits the expanded system with `S_i` repeated `k = 0..=k_max` extra times and
/// measures how far the pivot of `S_i` is from each line.
pub fn verify_pivot_invariance<T: Scalar>(s: &PointSet<T>, i: Label, k_max: u64, tol: f64) -> Result<InvarianceReport> {
    let pivot = match pivot_point(s, i)? {
        PivotResult::Finite(p) => p,
        PivotResult::AtInfinity => {
            return Ok(InvarianceReport {
                label: i,
                distances: Vec::new(),
                max_distance: 0.0,
                scale: s.coordinate_scale().to_f64_lossy(),
                tol,
                verdict: Verdict::NotApplicable,
            })
        }
    };
    let scale = T::max_of(s.coordinate_scale(), pivot.magnitude()).to_f64_lossy();
    let mut distances = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let system = expand_multiplicities(s, &Multiplicities::repeat_one(s.len(), i, k))?;
        let line = fit_expanded(&system)?;
        distances.push(line.distance_to(&pivot));
    }
    let max_distance = distances.iter().copied().fold(0.0, f64::max);
    let verdict = if max_distance <= tol * scale {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(InvarianceReport {
        label: i,
        distances,
        max_distance,
        scale,
        tol,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceEntry {
    pub k: u64,
    pub pivot: Option<Point<f64>>,
    /// Euclidean distance from the pivot to `S_r`; `None` at infinity.
    pub distance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub repeated: Label,
    pub observed: Label,
    pub entries: Vec<ConvergenceEntry>,
    pub scale: f64,
    /// Smallest `C` with `distance(k) <= C / k` over every schedule entry
    /// before the last one (with `k >= 1`).
    pub fitted_c: Option<f64>,
    /// Final distance stays within twice the `C / k` envelope.
    pub rate_ok: bool,
    /// Every entry with `k >= 10⁶` lies within `1e-5 · scale` of `S_r`.
    pub limit_ok: bool,
    /// Index from which the finite distances never increase.
    pub non_increasing_from: Option<usize>,
    pub passed: bool,
}

impl ConvergenceReport {
    pub fn eventually_decreasing(&self) -> bool {
        self.entries.len() >= 2 && self.non_increasing_from.is_some_and(|j| j + 1 < self.entries.len())
    }

    pub fn final_distance(&self) -> Option<f64> {
        self.entries.last().and_then(|e| e.distance)
    }
}

/// Tracks the pivot of `S_i` as `S_r` is repeated along `schedule`; the pivot
/// should approach `S_r` like `1/k`.
pub fn verify_convergence<T: Scalar>(
    s: &PointSet<T>,
    r: Label,
    i: Label,
    schedule: &[u64],
) -> Result<ConvergenceReport> {
    s.check_label(i)?;
    let target = s.get(r)?.clone();
    if r == i {
        return Err(Error::Shape("the repeated and observed labels must differ".into()));
    }
    let scale = s.coordinate_scale().to_f64_lossy();

    let entries: Vec<ConvergenceEntry> = schedule
        .iter()
        .map(|&k| {
            let d = Multiplicities::repeat_one(s.len(), r, k);
            let pivot = pivot_point_weighted(s, i, &d)?;
            Ok(match pivot {
                PivotResult::Finite(p) => {
                    let dx = (p.x.clone() - target.x.clone()).to_f64_lossy();
                    let dy = (p.y.clone() - target.y.clone()).to_f64_lossy();
                    ConvergenceEntry {
                        k,
                        pivot: Some(p.to_f64()),
                        distance: Some(dx.hypot(dy)),
                    }
                }
                PivotResult::AtInfinity => ConvergenceEntry {
                    k,
                    pivot: None,
                    distance: None,
                },
            })
        })
        .collect::<Result<_>>()?;

    let (head, last) = match entries.split_last() {
        Some((last, head)) => (head, last),
        None => return Err(Error::Shape("empty repetition schedule".into())),
    };
    let fitted_c = head
        .iter()
        .filter(|e| e.k >= 1)
        .filter_map(|e| e.distance.map(|d| d * e.k as f64))
        .reduce(f64::max);
    let rate_ok = match (fitted_c, last.distance) {
        (_, None) => false,
        (Some(c), Some(d)) if last.k >= 1 => d * last.k as f64 <= 2.0 * c,
        // nothing to fit against
        _ => true,
    };
    let limit_ok = entries
        .iter()
        .filter(|e| e.k >= CONVERGENCE_K)
        .all(|e| e.distance.is_some_and(|d| d <= CONVERGENCE_TOL * scale));

    let distances: Vec<Option<f64>> = entries.iter().map(|e| e.distance).collect();
    let non_increasing_from = (0..distances.len())
        .find(|&j| distances[j..].iter().all(Option::is_some) && distances[j..].windows(2).all(|w| w[1] <= w[0]));

    Ok(ConvergenceReport {
        repeated: r,
        observed: i,
        entries,
        scale,
        fitted_c,
        rate_ok,
        limit_ok,
        non_increasing_from,
        passed: rate_ok && limit_ok,
    })
}

/// Decades `10, 100, …, 10⁶`.
pub fn decade_schedule() -> Vec<u64> {
    (1..=6).map(|e| 10u64.pow(e)).collect()
}
