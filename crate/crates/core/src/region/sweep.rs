//! Exhaustive repetition sweeps that classify every pivot location.
//!
//! Each sweep enumerates repetition vectors `k ∈ {0..=k_max}^n` in
//! lexicographic order (first label most significant), evaluates the weighted
//! pivot of each checked label, and classifies it against the geometry formed
//! by the other points. Records come back ordered by `(k, label)` whatever the
//! degree of parallelism.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{pivot_point_weighted, Label, Multiplicities, PivotResult, Point, PointSet};
use crate::region::barycentric::{barycentric_coords, cross, dist2, sign_pattern, SignPattern, Triangle};
use crate::region::hull::{convex_hull, point_in_hull, ConvexHull, HullClass};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    FourPoint,
    ThreePoint,
    Hull,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    /// Barycentric sign pattern against the triangle of the other three points.
    Region(SignPattern),
    /// Position on the line through the other two points: `param` is 0 at the
    /// lower-labelled point and 1 at the higher one.
    Line {
        param: f64,
        on_line: bool,
    },
    Hull(HullClass),
    AtInfinity,
}

impl Classification {
    /// Short tag used for tallies and CSV output.
    pub fn tag(&self) -> String {
        match self {
            Classification::Region(p) => p.to_string(),
            Classification::Line { param, on_line } => {
                let place = if !on_line {
                    "off-line"
                } else if (0.0..=1.0).contains(param) {
                    "segment"
                } else {
                    "outside-segment"
                };
                place.to_string()
            }
            Classification::Hull(c) => c.as_str().to_string(),
            Classification::AtInfinity => "at-infinity".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    /// An outermost point's pivot left the triangle of the other three.
    ExtremeOutsideTriangle,
    /// An inner point's pivot landed in a region other than its two allowed
    /// unbounded ones.
    InnerWrongRegion,
    /// `+−+` or `−+−`, which no pivot may occupy.
    ForbiddenRegion,
    OffLine,
    /// Outer pivot of a three-point set beyond the opposite segment.
    OutsideSegment,
    /// Inner pivot of a three-point set strictly within the opposite segment.
    InsideSegment,
    OutsideHull,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Violation::ExtremeOutsideTriangle => "extreme-outside-triangle",
            Violation::InnerWrongRegion => "inner-wrong-region",
            Violation::ForbiddenRegion => "forbidden-region",
            Violation::OffLine => "off-line",
            Violation::OutsideSegment => "outside-segment",
            Violation::InsideSegment => "inside-segment",
            Violation::OutsideHull => "outside-hull",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord<T> {
    /// Extra repetitions per label.
    pub k: Vec<u64>,
    pub label: Label,
    pub pivot: PivotResult<T>,
    pub class: Classification,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionReport<T> {
    pub kind: SweepKind,
    pub k_max: u64,
    pub checked_labels: Vec<Label>,
    pub records: Vec<SweepRecord<T>>,
}

impl<T: Scalar> RegionReport<T> {
    pub fn violations(&self) -> impl Iterator<Item = &SweepRecord<T>> {
        self.records.iter().filter(|r| r.violation.is_some())
    }

    pub fn violation_count(&self) -> usize {
        self.violations().count()
    }

    /// Number of distinct repetition vectors visited.
    pub fn combinations(&self) -> usize {
        let mut n = 0;
        let mut last: Option<&[u64]> = None;
        for r in &self.records {
            if last != Some(r.k.as_slice()) {
                n += 1;
                last = Some(&r.k);
            }
        }
        n
    }

    /// Record count per `(label, classification tag)`.
    pub fn tally(&self) -> BTreeMap<(Label, String), usize> {
        let mut out = BTreeMap::new();
        for r in &self.records {
            *out.entry((r.label, r.class.tag())).or_insert(0) += 1;
        }
        out
    }

    pub fn at_infinity(&self, label: Label) -> usize {
        self.records
            .iter()
            .filter(|r| r.label == label && r.pivot.is_at_infinity())
            .count()
    }

    /// Distinct sign patterns seen for `label` (region sweeps only).
    pub fn patterns(&self, label: Label) -> Vec<SignPattern> {
        let mut seen: Vec<SignPattern> = self
            .records
            .iter()
            .filter(|r| r.label == label)
            .filter_map(|r| match r.class {
                Classification::Region(p) => Some(p),
                _ => None,
            })
            .collect();
        seen.sort();
        seen.dedup();
        seen
    }
}

fn combination(index: u64, n: usize, base: u64) -> Vec<u64> {
    let mut k = vec![0; n];
    let mut rest = index;
    for slot in k.iter_mut().rev() {
        *slot = rest % base;
        rest /= base;
    }
    k
}

fn combination_count(n: usize, k_max: u64) -> Result<u64> {
    (k_max + 1)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::Shape(format!("(k_max + 1)^{n} overflows")))
}

fn others(n: usize, label: Label) -> Vec<usize> {
    (0..n).filter(|&j| j != label.index()).collect()
}

fn ensure_sorted<T: Scalar>(s: &PointSet<T>, strict: bool) -> Result<()> {
    let ok = s
        .points()
        .windows(2)
        .all(|w| if strict { w[0].x < w[1].x } else { w[0].x <= w[1].x });
    if ok {
        Ok(())
    } else {
        let rel = if strict {
            "strictly increasing"
        } else {
            "non-decreasing"
        };
        Err(Error::Shape(format!("points must be given in {rel} x order")))
    }
}

/// Allowed regions for each label of a four-point set sorted by x.
fn expected_patterns(label: Label) -> &'static [&'static str] {
    match label.0 {
        1 | 4 => &["+++"],
        2 => &["+--", "-++"],
        _ => &["++-", "--+"],
    }
}

fn judge_region(label: Label, pattern: &SignPattern) -> Option<Violation> {
    let s = pattern.to_string();
    if s == "+-+" || s == "-+-" {
        return Some(Violation::ForbiddenRegion);
    }
    if pattern.is_boundary() || expected_patterns(label).contains(&s.as_str()) {
        return None;
    }
    Some(if label.0 == 1 || label.0 == 4 {
        Violation::ExtremeOutsideTriangle
    } else {
        Violation::InnerWrongRegion
    })
}

/// Classifies the pivots of all four labels of `s` (sorted by x) for every
/// repetition vector in `{0..=k_max}⁴`.
///
/// Outer labels must land inside the triangle of the other three points
/// (`+++`), label 2 in `+−−`/`−++`, label 3 in `++−`/`−−+`; `+−+` and `−+−`
/// must never occur. Patterns with a zero sign are boundary hits and are
/// tallied without counting as violations.
pub fn four_point_region_sweep<T: Scalar>(s: &PointSet<T>, k_max: u64, tol: f64) -> Result<RegionReport<T>> {
    if s.len() != 4 {
        return Err(Error::Shape(format!(
            "four-point sweep needs exactly 4 points, got {}",
            s.len()
        )));
    }
    ensure_sorted(s, false)?;
    let triangles: Vec<Triangle<T>> = s
        .labels()
        .map(|l| {
            let idx = others(4, l);
            Triangle::new(
                [0, 1, 2].map(|j| s.points()[idx[j]].clone()),
                [0, 1, 2].map(|j| Label::from_index(idx[j])),
            )
        })
        .collect::<Result<_>>()?;

    let total = combination_count(4, k_max)?;
    let records = (0..total)
        .into_par_iter()
        .map(|c| {
            let k = combination(c, 4, k_max + 1);
            let d = Multiplicities::from_repetitions(&k);
            s.labels()
                .map(|label| {
                    let pivot = pivot_point_weighted(s, label, &d)?;
                    let (class, violation) = match &pivot {
                        PivotResult::Finite(p) => {
                            let b = barycentric_coords(&triangles[label.index()], p);
                            let pattern = sign_pattern(&b, tol);
                            (Classification::Region(pattern), judge_region(label, &pattern))
                        }
                        PivotResult::AtInfinity => (Classification::AtInfinity, None),
                    };
                    Ok(SweepRecord {
                        k: k.clone(),
                        label,
                        pivot,
                        class,
                        violation,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    Ok(RegionReport {
        kind: SweepKind::FourPoint,
        k_max,
        checked_labels: s.labels().collect(),
        records,
    })
}

/// Three points with strictly increasing x: each pivot lies on the line
/// through the other two points; outer labels stay on the segment between
/// them, the inner label stays off it.
pub fn three_point_line_check<T: Scalar>(s: &PointSet<T>, k_max: u64, tol: f64) -> Result<RegionReport<T>> {
    if s.len() != 3 {
        return Err(Error::Shape(format!(
            "three-point check needs exactly 3 points, got {}",
            s.len()
        )));
    }
    ensure_sorted(s, true)?;
    let data_scale = s.coordinate_scale();
    let total = combination_count(3, k_max)?;

    let records = (0..total)
        .into_par_iter()
        .map(|c| {
            let k = combination(c, 3, k_max + 1);
            let d = Multiplicities::from_repetitions(&k);
            s.labels()
                .map(|label| {
                    let pivot = pivot_point_weighted(s, label, &d)?;
                    let (class, violation) = match &pivot {
                        PivotResult::Finite(p) => classify_on_line(s, label, p, &data_scale, tol),
                        PivotResult::AtInfinity => (Classification::AtInfinity, None),
                    };
                    Ok(SweepRecord {
                        k: k.clone(),
                        label,
                        pivot,
                        class,
                        violation,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    Ok(RegionReport {
        kind: SweepKind::ThreePoint,
        k_max,
        checked_labels: s.labels().collect(),
        records,
    })
}

fn classify_on_line<T: Scalar>(
    s: &PointSet<T>,
    label: Label,
    p: &Point<T>,
    data_scale: &T,
    tol: f64,
) -> (Classification, Option<Violation>) {
    let idx = others(3, label);
    let a = &s.points()[idx[0]];
    let b = &s.points()[idx[1]];
    let len2 = dist2(a, b);
    let c = cross(a, b, p);
    let along = (p.x.clone() - a.x.clone()) * (b.x.clone() - a.x.clone())
        + (p.y.clone() - a.y.clone()) * (b.y.clone() - a.y.clone());
    let param = along / len2.clone();

    let t = T::tolerance(tol);
    let scale = T::max_of(data_scale.clone(), p.magnitude());
    // |c| / |b − a| is the perpendicular distance
    let on_line = c.clone() * c <= t.clone() * t.clone() * scale.clone() * scale * len2;
    let one = T::one();
    let violation = if !on_line {
        Some(Violation::OffLine)
    } else if label.0 == 2 {
        (param > t && param < one - t).then_some(Violation::InsideSegment)
    } else {
        (param < -t.clone() || param > one + t).then_some(Violation::OutsideSegment)
    };
    (
        Classification::Line {
            param: param.to_f64_lossy(),
            on_line,
        },
        violation,
    )
}

/// Labels holding the smallest and largest abscissa, including every tie.
pub fn extreme_labels<T: Scalar>(s: &PointSet<T>) -> Vec<Label> {
    let pts = s.points();
    let lo = pts.iter().map(|p| p.x.clone()).fold(pts[0].x.clone(), T::min_of);
    let hi = pts.iter().map(|p| p.x.clone()).fold(pts[0].x.clone(), T::max_of);
    s.labels()
        .filter(|l| pts[l.index()].x == lo || pts[l.index()].x == hi)
        .collect()
}

/// The pivot of an outermost point is a positive weighted average of the
/// others, so it must stay inside their convex hull. Every label tied for the
/// extreme abscissa is checked; its own repetition count is held at zero
/// since it does not affect its pivot.
pub fn hull_bound_check<T: Scalar>(s: &PointSet<T>, k_max: u64, tol: f64) -> Result<RegionReport<T>> {
    let n = s.len();
    if n < 4 {
        return Err(Error::Shape(format!("hull check needs at least 4 points, got {n}")));
    }
    let checked = extreme_labels(s);
    let hulls: Vec<ConvexHull<T>> = checked
        .iter()
        .map(|&l| {
            let rest: Vec<Point<T>> = others(n, l).into_iter().map(|j| s.points()[j].clone()).collect();
            convex_hull(&rest)
        })
        .collect::<Result<_>>()?;

    let per_label = combination_count(n - 1, k_max)?;
    let mut records: Vec<SweepRecord<T>> = checked
        .par_iter()
        .zip(hulls.par_iter())
        .map(|(&label, hull)| {
            let rest = others(n, label);
            (0..per_label)
                .into_par_iter()
                .map(|c| {
                    let partial = combination(c, n - 1, k_max + 1);
                    let mut k = vec![0; n];
                    for (&j, &kj) in rest.iter().zip(&partial) {
                        k[j] = kj;
                    }
                    let pivot = pivot_point_weighted(s, label, &Multiplicities::from_repetitions(&k))?;
                    let (class, violation) = match &pivot {
                        PivotResult::Finite(p) => {
                            let class = point_in_hull(hull, p, tol);
                            (
                                Classification::Hull(class),
                                (class == HullClass::Outside).then_some(Violation::OutsideHull),
                            )
                        }
                        PivotResult::AtInfinity => (Classification::AtInfinity, None),
                    };
                    Ok(SweepRecord {
                        k,
                        label,
                        pivot,
                        class,
                        violation,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    records.sort_by(|a, b| a.k.cmp(&b.k).then(a.label.cmp(&b.label)));

    Ok(RegionReport {
        kind: SweepKind::Hull,
        k_max,
        checked_labels: checked,
        records,
    })
}
