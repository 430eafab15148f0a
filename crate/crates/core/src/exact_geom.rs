//! Exact planar geometry over arbitrary-precision rationals.
//!
//! Everything here is exact. There is no floating-point path in any
//! predicate: a single misclassified sign would silently change a crossing
//! count.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from a small numerator/denominator pair.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    /// Lossy conversion for display purposes only (SVG output).
    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    fn from_signum<T: Signed>(v: &T) -> Self {
        if v.is_positive() {
            Orientation::CounterClockwise
        } else if v.is_negative() {
            Orientation::Clockwise
        } else {
            Orientation::Collinear
        }
    }
}

/// Sign of the determinant `|q - p, r - p|`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let det = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    Orientation::from_signum(&det)
}

/// True iff the line through `u` and `v` crosses the open segment `(s, t)`.
///
/// A segment endpoint lying on the line never counts.
pub fn strictly_separates(u: &Point, v: &Point, s: &Point, t: &Point) -> bool {
    orientation(u, v, s).sign() * orientation(u, v, t).sign() == -1
}

/// The first obstruction to general position found in a point list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    Duplicate(usize, usize),
    Collinear(usize, usize, usize),
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::Duplicate(i, j) => write!(f, "points {i} and {j} coincide"),
            Degeneracy::Collinear(i, j, k) => write!(f, "points {i}, {j}, {k} are collinear"),
        }
    }
}

/// Returns the lexicographically first duplicate pair or collinear triple.
pub fn find_degeneracy(points: &[Point]) -> Option<Degeneracy> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Some(Degeneracy::Duplicate(i, j));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orientation(&points[i], &points[j], &points[k]) == Orientation::Collinear {
                    return Some(Degeneracy::Collinear(i, j, k));
                }
            }
        }
    }
    None
}

pub fn is_general_position(points: &[Point]) -> bool {
    find_degeneracy(points).is_none()
}

/// Rational point on the unit circle, `((1 - t^2) / (1 + t^2), 2t / (1 + t^2))`.
///
/// The map is injective and increasing in angle over `t` in `(-inf, inf)`,
/// covering every point of the circle except `(-1, 0)`.
pub fn rational_circle_point(t: &Rational) -> Point {
    let one = Rational::one();
    let t2 = t * t;
    let den = &one + &t2;
    let x = (&one - &t2) / &den;
    let y = (t * Rational::from_integer(BigInt::from(2))) / den;
    Point::new(x, y)
}

/// Rational approximation of `tan(angle / 2)` with the given denominator,
/// i.e. a circle parameter whose point lies near `angle` (radians, in
/// `(-pi, pi)`).
pub fn circle_parameter_near(angle: f64, denominator: i64) -> Rational {
    let t = (angle / 2.0).tan();
    let num = (t * denominator as f64).round() as i64;
    ratio(num, denominator)
}

/// Exact integer coordinates for a point set: every point scaled by the
/// least common multiple of all coordinate denominators.
pub(crate) fn common_denominator_coords(points: &[Point]) -> Vec<(BigInt, BigInt)> {
    let mut lcm = BigInt::one();
    for p in points {
        lcm = lcm.lcm(p.x.denom());
        lcm = lcm.lcm(p.y.denom());
    }
    points
        .iter()
        .map(|p| {
            (
                p.x.numer() * (&lcm / p.x.denom()),
                p.y.numer() * (&lcm / p.y.denom()),
            )
        })
        .collect()
}

/// Orientation sign for integer points whose coordinates fit in `i64` with
/// magnitude below 2^61, computed in `i128` without overflow.
#[inline]
pub(crate) fn orient_i64(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> i8 {
    let det = (q.0 as i128 - p.0 as i128) * (r.1 as i128 - p.1 as i128)
        - (q.1 as i128 - p.1 as i128) * (r.0 as i128 - p.0 as i128);
    det.signum() as i8
}

pub(crate) const SMALL_COORD_LIMIT: i64 = 1 << 61;

pub(crate) fn orient_big(p: &(BigInt, BigInt), q: &(BigInt, BigInt), r: &(BigInt, BigInt)) -> i8 {
    let det = (&q.0 - &p.0) * (&r.1 - &p.1) - (&q.1 - &p.1) * (&r.0 - &p.0);
    if det.is_zero() {
        0
    } else if det.is_positive() {
        1
    } else {
        -1
    }
}
