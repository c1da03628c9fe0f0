use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{Label, Point};
use crate::scalar::Scalar;

/// Default tolerance under which a barycentric coordinate counts as zero.
pub const SIGN_TOL: f64 = 1e-9;

pub(crate) fn cross<T: Scalar>(o: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    (a.x.clone() - o.x.clone()) * (b.y.clone() - o.y.clone())
        - (a.y.clone() - o.y.clone()) * (b.x.clone() - o.x.clone())
}

pub(crate) fn dist2<T: Scalar>(a: &Point<T>, b: &Point<T>) -> T {
    let dx = a.x.clone() - b.x.clone();
    let dy = a.y.clone() - b.y.clone();
    dx.clone() * dx + dy.clone() * dy
}

/// A non-degenerate triangle whose vertices remember their point labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangle<T> {
    vertices: [Point<T>; 3],
    labels: [Label; 3],
    /// Twice the signed area.
    area2: T,
}

impl<T: Scalar> Triangle<T> {
    pub fn new(vertices: [Point<T>; 3], labels: [Label; 3]) -> Result<Self> {
        let area2 = cross(&vertices[0], &vertices[1], &vertices[2]);
        let diam2 = [(0, 1), (1, 2), (0, 2)]
            .iter()
            .map(|&(i, j)| dist2(&vertices[i], &vertices[j]))
            .fold(T::zero(), T::max_of);
        if area2.is_zero() || T::is_negligible(&area2, &diam2, 1e-12) {
            return Err(Error::DegenerateTriangle);
        }
        Ok(Triangle {
            vertices,
            labels,
            area2,
        })
    }

    /// Triangle with unlabelled vertices (labels 1, 2, 3).
    pub fn from_points(a: Point<T>, b: Point<T>, c: Point<T>) -> Result<Self> {
        Self::new([a, b, c], [Label(1), Label(2), Label(3)])
    }

    pub fn vertices(&self) -> &[Point<T>; 3] {
        &self.vertices
    }

    pub fn labels(&self) -> [Label; 3] {
        self.labels
    }

    /// Squared length of the longest edge.
    pub fn diameter2(&self) -> T {
        [(0, 1), (1, 2), (0, 2)]
            .iter()
            .map(|&(i, j)| dist2(&self.vertices[i], &self.vertices[j]))
            .fold(T::zero(), T::max_of)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricCoords<T> {
    pub lambda: [T; 3],
}

impl<T: Scalar> BarycentricCoords<T> {
    pub fn sum(&self) -> T {
        self.lambda.iter().fold(T::zero(), |a, b| a + b.clone())
    }

    /// `Σ λ_i v_i`.
    pub fn reconstruct(&self, t: &Triangle<T>) -> Point<T> {
        let mut x = T::zero();
        let mut y = T::zero();
        for (l, v) in self.lambda.iter().zip(t.vertices.iter()) {
            x += l.clone() * v.x.clone();
            y += l.clone() * v.y.clone();
        }
        Point::new(x, y)
    }
}

/// Solves `λ₁v₁ + λ₂v₂ + λ₃v₃ = p`, `λ₁ + λ₂ + λ₃ = 1`.
///
/// Each `λ_i` is the signed area of the sub-triangle opposite `v_i` over the
/// full signed area, so its sign never depends on the other two.
pub fn barycentric_coords<T: Scalar>(t: &Triangle<T>, p: &Point<T>) -> BarycentricCoords<T> {
    let [a, b, c] = &t.vertices;
    let area = t.area2.clone();
    BarycentricCoords {
        lambda: [
            cross(p, b, c) / area.clone(),
            cross(a, p, c) / area.clone(),
            cross(a, b, p) / area,
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// Signs of `(λ₁, λ₂, λ₃)`, naming one of the seven regions a triangle's edge
/// lines cut the plane into (or an edge/vertex when a sign is zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern(pub [Sign; 3]);

impl SignPattern {
    pub fn parse(s: &str) -> Option<Self> {
        let signs: Vec<Sign> = s
            .chars()
            .map(|c| match c {
                '+' => Some(Sign::Pos),
                '-' => Some(Sign::Neg),
                '0' => Some(Sign::Zero),
                _ => None,
            })
            .collect::<Option<_>>()?;
        let signs: [Sign; 3] = signs.try_into().ok()?;
        Some(SignPattern(signs))
    }

    pub fn is_boundary(&self) -> bool {
        self.0.contains(&Sign::Zero)
    }

    pub fn is_interior(&self) -> bool {
        self.0 == [Sign::Pos; 3]
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

pub fn sign_pattern<T: Scalar>(b: &BarycentricCoords<T>, tol: f64) -> SignPattern {
    let tol = T::tolerance(tol);
    SignPattern(b.lambda.clone().map(|l| {
        if l.abs() <= tol {
            Sign::Zero
        } else if l.gt_zero() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }))
}
