//! Scalar abstraction shared by every computation in the crate.
//!
//! All pivot, barycentric and pseudopivot formulas are rational functions of
//! the inputs, so they evaluate equally well in `f32`, `f64` or exact
//! [`BigRational`]. Zero tests go through [`Scalar::tolerance`], which is a
//! relative epsilon for floats and exactly zero for rationals.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, NumAssign, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + NumAssign + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
    /// `true` when arithmetic is exact and tolerances collapse to zero.
    const EXACT: bool;

    /// Relative tolerance `rel` expressed in this scalar type. Exact types
    /// return zero so that "within tolerance" means "equal".
    fn tolerance(rel: f64) -> Self;

    fn is_finite(&self) -> bool {
        true
    }

    /// Size of the stored representation in bits. Only meaningful for exact
    /// types, where it grows under iteration.
    fn bit_size(&self) -> u64 {
        0
    }

    /// Parses a numeric literal. Exact types keep decimal literals exact
    /// (`"0.01"` is 1/100, not the nearest binary fraction).
    fn parse_literal(s: &str) -> Option<Self>;

    fn from_u64_lossless(v: u64) -> Self {
        Self::from_u64(v).expect("u64 converts to every scalar type")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Strictly greater than zero. `Signed::is_positive` on floats reports
    /// the sign bit, so `+0.0` would count.
    fn gt_zero(&self) -> bool {
        *self > Self::zero()
    }

    fn lt_zero(&self) -> bool {
        *self < Self::zero()
    }

    /// Total order used where comparisons dominate the cost; NaN compares equal.
    fn compare(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    /// `|value| <= tol * scale`, the one zero test used throughout.
    fn is_negligible(value: &Self, scale: &Self, rel: f64) -> bool {
        value.abs() <= Self::tolerance(rel) * scale.clone()
    }

    /// `(y² + z² − x(y + z)) / (y + z − 2x)` for `x` each entry of `v` and
    /// `y`, `z` the other two. An entry is `None` when its denominator is
    /// negligible against the spread of `v` at relative tolerance `rel`.
    fn pseudopivot_images(v: &[Self; 3], rel: f64) -> [Option<Self>; 3] {
        let lo = v.iter().cloned().reduce(Self::min_of).expect("three values");
        let hi = v.iter().cloned().reduce(Self::max_of).expect("three values");
        let range = hi - lo;
        let f = |x: &Self, y: &Self, z: &Self| {
            let den = y.clone() + z.clone() - x.clone() - x.clone();
            if den.is_zero() || Self::is_negligible(&den, &range, rel) {
                return None;
            }
            let num = y.clone() * y.clone() + z.clone() * z.clone() - x.clone() * (y.clone() + z.clone());
            Some(num / den)
        };
        [f(&v[0], &v[1], &v[2]), f(&v[1], &v[0], &v[2]), f(&v[2], &v[0], &v[1])]
    }

    /// `Σ aᵢ·bᵢ` over the pairs, in order.
    fn dot<'a, I>(pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)> + Clone,
        Self: 'a,
    {
        let mut acc = Self::zero();
        for (a, b) in pairs {
            acc += a.clone() * b.clone();
        }
        acc
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance(rel: f64) -> Self {
        rel
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn parse_literal(s: &str) -> Option<Self> {
        s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    // A relative tolerance below single-precision resolution would make every
    // zero test fail, so the requested value is floored at a few ulps.
    fn tolerance(rel: f64) -> Self {
        (rel as f32).max(8.0 * f32::EPSILON)
    }

    fn is_finite(&self) -> bool {
        f32::is_finite(*self)
    }

    fn parse_literal(s: &str) -> Option<Self> {
        s.trim().parse::<f32>().ok().filter(|v| v.is_finite())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn tolerance(_rel: f64) -> Self {
        BigRational::zero()
    }

    fn bit_size(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }

    fn parse_literal(s: &str) -> Option<Self> {
        parse_rational(s)
    }

    // num-rational's own conversion goes through a lossy path for large
    // operands; exponent-aware scaling keeps huge iterates representable.
    fn to_f64_lossy(&self) -> f64 {
        rational_to_f64(self)
    }

    // Ratio's Ord walks a continued-fraction expansion, which is far slower
    // than one cross multiplication once operands are large.
    fn compare(&self, other: &Self) -> Ordering {
        (self.numer() * other.denom()).cmp(&(other.numer() * self.denom()))
    }

    // Each Ratio operation reduces by a full-width gcd, which dominates once
    // iterates reach thousands of bits. Over one common denominator L the
    // image is N / (L·e); with g = gcd(N, e) and gcd(N/g, e/g) = 1 the full
    // reduction is gcd(N, L·e) = g · gcd(N/g, L), two half-width gcds.
    fn pseudopivot_images(v: &[Self; 3], _rel: f64) -> [Option<Self>; 3] {
        let l = v[0].denom().lcm(v[1].denom()).lcm(v[2].denom());
        let n = v.clone().map(|r| r.numer() * (&l / r.denom()));
        let f = |x: &BigInt, y: &BigInt, z: &BigInt| {
            let e = y + z - x - x;
            if e.is_zero() {
                return None;
            }
            let num = y * y + z * z - x * (y + z);
            let g = (&num % &e).gcd(&e);
            let (num, e) = (num / &g, e / g);
            let h = (&num % &l).gcd(&l);
            let (num, den) = (num / &h, (&l / h) * e);
            Some(if den.is_negative() {
                BigRational::new_raw(-num, -den)
            } else {
                BigRational::new_raw(num, den)
            })
        };
        [f(&n[0], &n[1], &n[2]), f(&n[1], &n[0], &n[2]), f(&n[2], &n[0], &n[1])]
    }

    // Summing over the common denominator reduces once instead of per term.
    fn dot<'a, I>(pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)> + Clone,
    {
        let l = pairs
            .clone()
            .fold(BigInt::from(1), |l, (a, b)| l.lcm(&(a.denom() * b.denom())));
        let mut sum = BigInt::zero();
        for (a, b) in pairs {
            let p = a.numer() * b.numer();
            let d = a.denom() * b.denom();
            sum += if d == l { p } else { p * (&l / d) };
        }
        BigRational::new(sum, l)
    }
}

/// Parses `"p/q"`, plain integers, and decimal literals with an optional
/// exponent (`"-1.25e-3"`) into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str_radix(num.trim(), 10).ok()?;
        let den = BigInt::from_str_radix(den.trim(), 10).ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str_radix(&all_digits, 10).ok()? * sign;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64().filter(|v| v.is_finite()) {
        return v;
    }
    // Shift both operands down to 64 significant bits before dividing.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let n_shift = (nb - 64).max(0);
    let d_shift = (db - 64).max(0);
    let n = (r.numer() >> n_shift as usize).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> d_shift as usize).to_f64().unwrap_or(f64::NAN);
    let exp = (n_shift - d_shift).clamp(i32::MIN as i64, i32::MAX as i64) as i32;
    (n / d) * 2f64.powi(exp)
}
