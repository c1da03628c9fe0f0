//! Weighted least-squares fits and pivot-point formulas.
//!
//! Repeating point `S_j` a further `k_j` times is the same as giving it the
//! weight `δ_j = k_j + 1` in the normal equations. Expressed in coordinates
//! centred on `S_i`, the first normal equation no longer involves `δ_i`, which
//! pins every fitted line to a single point regardless of how often `S_i` is
//! repeated: the pivot of `S_i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative threshold below which the weighted centric x-sum counts as zero.
pub const AT_INFINITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn translate(&self, dx: &T, dy: &T) -> Self {
        Point::new(self.x.clone() + dx.clone(), self.y.clone() + dy.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Point::new(self.x.clone() * s.clone(), self.y.clone() * s.clone())
    }

    /// Largest absolute coordinate.
    pub fn magnitude(&self) -> T {
        T::max_of(self.x.abs(), self.y.abs())
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point::new(self.x.to_f64_lossy(), self.y.to_f64_lossy())
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// 1-based point label, stable for the lifetime of a [`PointSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub usize);

impl Label {
    pub fn index(self) -> usize {
        self.0 - 1
    }

    pub fn from_index(i: usize) -> Self {
        Label(i + 1)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An ordered set of at least two finite points, not all sharing one
/// abscissa. Coincident points are allowed and keep distinct labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<T> {
    points: Vec<Point<T>>,
}

impl<T: Scalar> PointSet<T> {
    pub fn new(points: Vec<Point<T>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Shape(format!(
                "a point set needs at least 2 points, got {}",
                points.len()
            )));
        }
        if let Some(i) = points.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::NonFinite(i + 1));
        }
        if points.iter().all(|p| p.x == points[0].x) {
            return Err(Error::DegenerateX);
        }
        Ok(PointSet { points })
    }

    pub fn from_pairs<I: IntoIterator<Item = (T, T)>>(pairs: I) -> Result<Self> {
        Self::new(pairs.into_iter().map(|(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> {
        (1..=self.points.len()).map(Label)
    }

    pub fn check_label(&self, label: Label) -> Result<()> {
        if label.0 == 0 || label.0 > self.points.len() {
            Err(Error::Label {
                label: label.0,
                n: self.points.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn get(&self, label: Label) -> Result<&Point<T>> {
        self.check_label(label)?;
        Ok(&self.points[label.index()])
    }

    /// Largest absolute coordinate over the set.
    pub fn coordinate_scale(&self) -> T {
        self.points.iter().map(Point::magnitude).fold(T::zero(), T::max_of)
    }

    pub fn translate(&self, dx: &T, dy: &T) -> Self {
        PointSet {
            points: self.points.iter().map(|p| p.translate(dx, dy)).collect(),
        }
    }

    /// Scales every coordinate by `s`, which must be nonzero.
    pub fn scale(&self, s: &T) -> Result<Self> {
        Self::new(self.points.iter().map(|p| p.scale(s)).collect())
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Result<PointSet<U>> {
        PointSet::new(self.points.iter().map(|p| Point::new(f(&p.x), f(&p.y))).collect())
    }
}

/// Displacement of a point from an anchor point.
#[derive(Debug, Clone, PartialEq)]
pub struct CentricPoint<T> {
    pub chi: T,
    pub gamma: T,
}

/// Per-point weights `δ_j = k_j + 1`, where `k_j` counts extra repetitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiplicities {
    delta: Vec<u64>,
}

impl Multiplicities {
    pub fn new(delta: Vec<u64>) -> Result<Self> {
        if let Some(i) = delta.iter().position(|&d| d == 0) {
            return Err(Error::Multiplicity { label: i + 1, value: 0 });
        }
        Ok(Multiplicities { delta })
    }

    /// Every point appears exactly once.
    pub fn ones(n: usize) -> Self {
        Multiplicities { delta: vec![1; n] }
    }

    /// Builds weights from extra-repetition counts `k_j`.
    pub fn from_repetitions(k: &[u64]) -> Self {
        Multiplicities {
            delta: k.iter().map(|&k| k + 1).collect(),
        }
    }

    /// All ones except `label`, which is repeated `k` extra times.
    pub fn repeat_one(n: usize, label: Label, k: u64) -> Self {
        let mut delta = vec![1; n];
        delta[label.index()] = k + 1;
        Multiplicities { delta }
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.delta
    }

    pub fn total(&self) -> u64 {
        self.delta.iter().sum()
    }

    pub(crate) fn check_shape<T>(&self, s: &PointSet<T>) -> Result<()> {
        if self.delta.len() != s.points.len() {
            return Err(Error::Shape(format!(
                "{} multiplicities for {} points",
                self.delta.len(),
                s.points.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionLine<T> {
    pub slope: T,
    pub intercept: T,
    /// Weighted sum of squared vertical residuals at the optimum.
    pub sse: T,
}

impl<T: Scalar> RegressionLine<T> {
    pub fn eval(&self, x: &T) -> T {
        self.slope.clone() * x.clone() + self.intercept.clone()
    }

    /// Signed vertical offset `m·x + b − y`.
    pub fn residual(&self, p: &Point<T>) -> T {
        self.eval(&p.x) - p.y.clone()
    }

    /// Perpendicular distance from `p` to the line.
    pub fn distance_to(&self, p: &Point<T>) -> f64 {
        let r = self.residual(p).to_f64_lossy().abs();
        let m = self.slope.to_f64_lossy();
        r / (1.0 + m * m).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PivotResult<T> {
    Finite(Point<T>),
    /// The weighted centric x-sum vanishes; the lines are parallel and the
    /// pivot sits at infinity.
    AtInfinity,
}

impl<T> PivotResult<T> {
    pub fn finite(&self) -> Option<&Point<T>> {
        match self {
            PivotResult::Finite(p) => Some(p),
            PivotResult::AtInfinity => None,
        }
    }

    pub fn is_at_infinity(&self) -> bool {
        matches!(self, PivotResult::AtInfinity)
    }
}

/// Coordinates of every point relative to `S_anchor`.
pub fn centric_transform<T: Scalar>(s: &PointSet<T>, anchor: Label) -> Result<Vec<CentricPoint<T>>> {
    let a = s.get(anchor)?;
    Ok(s.points
        .iter()
        .map(|p| CentricPoint {
            chi: p.x.clone() - a.x.clone(),
            gamma: p.y.clone() - a.y.clone(),
        })
        .collect())
}

/// Least-squares line through `s` with point `j` counted `δ_j` times.
pub fn fit_weighted_line<T: Scalar>(s: &PointSet<T>, d: &Multiplicities) -> Result<RegressionLine<T>> {
    d.check_shape(s)?;
    // Working in differences from a heavily weighted data point keeps the
    // centred sums accurate in floating point.
    let anchor = d
        .delta
        .iter()
        .enumerate()
        .max_by_key(|&(i, &w)| (w, std::cmp::Reverse(i)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let origin = &s.points[anchor];
    let weights: Vec<T> = d.delta.iter().map(|&w| T::from_u64_lossless(w)).collect();
    let dx: Vec<T> = s.points.iter().map(|p| p.x.clone() - origin.x.clone()).collect();
    let dy: Vec<T> = s.points.iter().map(|p| p.y.clone() - origin.y.clone()).collect();

    let total = weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
    let mean_x = weighted_sum(&weights, dx.iter().cloned()) / total.clone();
    let mean_y = weighted_sum(&weights, dy.iter().cloned()) / total.clone();

    let cx: Vec<T> = dx.iter().map(|v| v.clone() - mean_x.clone()).collect();
    let cy: Vec<T> = dy.iter().map(|v| v.clone() - mean_y.clone()).collect();
    let sxx = weighted_sum(&weights, cx.iter().map(|v| v.clone() * v.clone()));
    let sxy = weighted_sum(&weights, cx.iter().zip(&cy).map(|(a, b)| a.clone() * b.clone()));

    let spread = dx.iter().map(|v| v.abs()).fold(T::zero(), T::max_of);
    let tol = T::tolerance(AT_INFINITY_TOL);
    if sxx <= tol.clone() * tol * total.clone() * spread.clone() * spread || sxx.is_zero() {
        return Err(Error::DegenerateX);
    }

    let slope = sxy / sxx;
    let intercept = (origin.y.clone() + mean_y) - slope.clone() * (origin.x.clone() + mean_x);
    let sse = weighted_sum(
        &weights,
        cx.iter().zip(&cy).map(|(u, v)| {
            let r = v.clone() - slope.clone() * u.clone();
            r.clone() * r
        }),
    );
    Ok(RegressionLine { slope, intercept, sse })
}

fn weighted_sum<T: Scalar>(weights: &[T], values: impl Iterator<Item = T>) -> T {
    weights
        .iter()
        .zip(values)
        .fold(T::zero(), |acc, (w, v)| acc + w.clone() * v)
}

/// Pivot of `S_i` with every point counted once.
pub fn pivot_point<T: Scalar>(s: &PointSet<T>, i: Label) -> Result<PivotResult<T>> {
    pivot_point_weighted(s, i, &Multiplicities::ones(s.len()))
}

/// Pivot of `S_i` when each `S_j` carries weight `δ_j`:
///
/// ```text
/// x̃_i = x_i + Σ δ_j χ_j² / Σ δ_j χ_j      ỹ_i = y_i + Σ δ_j χ_j γ_j / Σ δ_j χ_j
/// ```
///
/// with `(χ_j, γ_j)` the displacement of `S_j` from `S_i`. The weight of
/// `S_i` itself never matters since its displacement is zero.
pub fn pivot_point_weighted<T: Scalar>(s: &PointSet<T>, i: Label, d: &Multiplicities) -> Result<PivotResult<T>> {
    d.check_shape(s)?;
    let anchor = s.get(i)?;
    let mut denom = T::zero();
    let mut num_x = T::zero();
    let mut num_y = T::zero();
    let mut max_chi = T::zero();
    let mut total = T::zero();
    for (p, &w) in s.points.iter().zip(&d.delta) {
        let w = T::from_u64_lossless(w);
        let chi = p.x.clone() - anchor.x.clone();
        let gamma = p.y.clone() - anchor.y.clone();
        let wchi = w.clone() * chi.clone();
        num_x += wchi.clone() * chi.clone();
        num_y += wchi.clone() * gamma;
        denom += wchi;
        max_chi = T::max_of(max_chi, chi.abs());
        total += w;
    }
    if denom.is_zero() || T::is_negligible(&denom, &(max_chi * total), AT_INFINITY_TOL) {
        return Ok(PivotResult::AtInfinity);
    }
    Ok(PivotResult::Finite(Point::new(
        anchor.x.clone() + num_x / denom.clone(),
        anchor.y.clone() + num_y / denom,
    )))
}

/// Affine map sending `chi2 ↦ −1` and `chi3 ↦ +1`.
///
/// Under this normalisation a three-point set anchored at `S_1` has its pivot
/// abscissa at the negative reciprocal of the anchor's own image.
pub fn transform_t<T: Scalar>(chi: &T, chi2: &T, chi3: &T) -> Result<T> {
    let two = T::one() + T::one();
    let half_width = (chi3.clone() - chi2.clone()) / two.clone();
    if half_width.is_zero() {
        return Err(Error::DegenerateInterval);
    }
    let mid = (chi2.clone() + chi3.clone()) / two;
    Ok((chi.clone() - mid) / half_width)
}
