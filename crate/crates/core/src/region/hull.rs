use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::region::barycentric::{cross, dist2};
use crate::scalar::Scalar;

/// Counter-clockwise hull vertices, strictly convex. Collinear input gives a
/// two-vertex hull (the extremes); coincident input gives a single vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexHull<T> {
    vertices: Vec<Point<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HullClass {
    Inside,
    OnBoundary,
    Outside,
}

impl HullClass {
    pub fn as_str(self) -> &'static str {
        match self {
            HullClass::Inside => "inside",
            HullClass::OnBoundary => "boundary",
            HullClass::Outside => "outside",
        }
    }
}

impl<T: Scalar> ConvexHull<T> {
    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    /// Squared largest distance between two hull vertices.
    pub fn diameter2(&self) -> T {
        let v = &self.vertices;
        let mut best = T::zero();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = T::max_of(best, dist2(&v[i], &v[j]));
            }
        }
        best
    }
}

fn lex<T: Scalar>(a: &Point<T>, b: &Point<T>) -> Ordering {
    a.x.partial_cmp(&b.x)
        .unwrap_or(Ordering::Equal)
        .then(a.y.partial_cmp(&b.y).unwrap_or(Ordering::Equal))
}

/// Andrew's monotone chain.
pub fn convex_hull<T: Scalar>(points: &[Point<T>]) -> Result<ConvexHull<T>> {
    if points.len() < 2 {
        return Err(Error::Shape(format!(
            "convex hull needs at least 2 points, got {}",
            points.len()
        )));
    }
    let mut pts = points.to_vec();
    pts.sort_by(lex);
    pts.dedup();
    if pts.len() < 3 {
        return Ok(ConvexHull { vertices: pts });
    }

    let mut lower: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).gt_zero() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).gt_zero() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(ConvexHull { vertices: lower })
}

/// Classifies `p` against the hull with a boundary band of half-width
/// `tol · diameter`.
pub fn point_in_hull<T: Scalar>(h: &ConvexHull<T>, p: &Point<T>, tol: f64) -> HullClass {
    let v = &h.vertices;
    let tol = T::tolerance(tol);
    match v.len() {
        0 => HullClass::Outside,
        1 => {
            let scale = T::max_of(v[0].magnitude(), T::one());
            let band = tol.clone() * scale;
            if dist2(&v[0], p) <= band.clone() * band {
                HullClass::OnBoundary
            } else {
                HullClass::Outside
            }
        }
        2 => {
            let (a, b) = (&v[0], &v[1]);
            let len2 = dist2(a, b);
            let band2 = tol.clone() * tol.clone() * len2.clone();
            let c = cross(a, b, p);
            let along = (p.x.clone() - a.x.clone()) * (b.x.clone() - a.x.clone())
                + (p.y.clone() - a.y.clone()) * (b.y.clone() - a.y.clone());
            let within_line = c.clone() * c <= band2 * len2.clone();
            let lo = -(tol.clone() * len2.clone());
            let hi = len2.clone() + tol * len2;
            if within_line && along >= lo && along <= hi {
                HullClass::OnBoundary
            } else {
                HullClass::Outside
            }
        }
        n => {
            let diam2 = h.diameter2();
            let mut strictly_inside = true;
            for i in 0..n {
                let a = &v[i];
                let b = &v[(i + 1) % n];
                let c = cross(a, b, p);
                // distance to the edge line is c / |b − a|
                let band2 = tol.clone() * tol.clone() * diam2.clone() * dist2(a, b);
                let beyond_band = c.clone() * c.clone() > band2;
                if c.lt_zero() && beyond_band {
                    return HullClass::Outside;
                }
                if !(c.gt_zero() && beyond_band) {
                    strictly_inside = false;
                }
            }
            if strictly_inside {
                HullClass::Inside
            } else {
                HullClass::OnBoundary
            }
        }
    }
}
