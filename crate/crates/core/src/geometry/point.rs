use super::scalar::{int, to_f64, Frac, Scalar};
use super::GeometryError;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Relative error allowance for the floating-point filters. Each filtered
/// predicate returns the exact sign whenever the float estimate exceeds this
/// bound, and falls back to rational arithmetic otherwise.
pub(crate) const FILTER_REL: f64 = 1e-14;

/// Magnitudes below this are treated as unreliable for filtering (subnormal
/// range), forcing the exact path.
pub(crate) const FILTER_FLOOR: f64 = 1e-280;

/// A point with exact rational coordinates.
///
/// A float approximation is cached next to the exact coordinates so that sign
/// predicates can skip the rational path when the answer is unambiguous.
/// Equality, hashing and ordering use the exact coordinates only; the order is
/// lexicographic in `(x, y)`.
#[derive(Clone)]
pub struct Point {
    x: Scalar,
    y: Scalar,
    fx: f64,
    fy: f64,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        let fx = to_f64(&x);
        let fy = to_f64(&y);
        Point { x, y, fx, fy }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    #[inline]
    pub fn x(&self) -> &Scalar {
        &self.x
    }

    #[inline]
    pub fn y(&self) -> &Scalar {
        &self.y
    }

    /// Float approximation, for display and filtering only.
    #[inline]
    pub fn approx(&self) -> (f64, f64) {
        (self.fx, self.fy)
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let two = int(2);
        Point::new((&self.x + &other.x) / &two, (&self.y + &other.y) / two)
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Scalar) -> Point {
        Point::new(
            &self.x + (&other.x - &self.x) * t,
            &self.y + (&other.y - &self.y) * t,
        )
    }

    pub fn offset(&self, dx: &Scalar, dy: &Scalar) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }

    /// Vertex centroid (arithmetic mean) of a non-empty point list.
    pub fn centroid(points: &[Point]) -> Point {
        assert!(!points.is_empty(), "centroid of an empty point list");
        let n = Frac::of(&int(points.len() as i64));
        let mut sx = Frac::of(&points[0].x);
        let mut sy = Frac::of(&points[0].y);
        for p in &points[1..] {
            sx = sx.add(&Frac::of(&p.x));
            sy = sy.add(&Frac::of(&p.y));
        }
        Point::new(sx.div(&n).reduce(), sy.div(&n).reduce())
    }

    /// Exact comparison of y coordinates, decided in floats when possible.
    pub(crate) fn cmp_y(&self, other: &Point) -> Ordering {
        approx_cmp(self.fy, other.fy).unwrap_or_else(|| self.y.cmp(&other.y))
    }

    pub(crate) fn sub(&self, other: &Point) -> (Scalar, Scalar) {
        (&self.x - &other.x, &self.y - &other.y)
    }
}

/// Float comparison when the cached approximations are far enough apart to
/// decide it, `None` otherwise.
fn approx_cmp(a: f64, b: f64) -> Option<Ordering> {
    let gap = 1e-9 * (a.abs() + b.abs()) + 1e-300;
    if !(a.is_finite() && b.is_finite()) || (a - b).abs() <= gap {
        None
    } else {
        a.partial_cmp(&b)
    }
}

fn same_scalar(a: &Scalar, b: &Scalar) -> bool {
    // Rationals are kept reduced with a positive denominator.
    a.numer() == b.numer() && a.denom() == b.denom()
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        if approx_cmp(self.fx, other.fx).is_some() || approx_cmp(self.fy, other.fy).is_some() {
            return false;
        }
        same_scalar(&self.x, &other.x) && same_scalar(&self.y, &other.y)
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        let x = approx_cmp(self.fx, other.fx).unwrap_or_else(|| self.x.cmp(&other.x));
        x.then_with(|| approx_cmp(self.fy, other.fy).unwrap_or_else(|| self.y.cmp(&other.y)))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    fn from_sign(sign: Ordering) -> Self {
        match sign {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of the cross product `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    Orientation::from_sign(cross_sign(p, q, r))
}

pub(crate) fn cross_sign(p: &Point, q: &Point, r: &Point) -> Ordering {
    let (ax, ay) = (q.fx - p.fx, q.fy - p.fy);
    let (bx, by) = (r.fx - p.fx, r.fy - p.fy);
    let det = ax * by - ay * bx;
    let mag = (q.fx.abs() + p.fx.abs()) * (r.fy.abs() + p.fy.abs())
        + (q.fy.abs() + p.fy.abs()) * (r.fx.abs() + p.fx.abs());
    let bound = FILTER_REL * mag;
    if bound.is_finite() && mag > FILTER_FLOOR {
        if det > bound {
            return Ordering::Greater;
        }
        if det < -bound {
            return Ordering::Less;
        }
    }
    cross_frac(p, q, r).signum()
}

pub(crate) fn cross_frac(p: &Point, q: &Point, r: &Point) -> Frac {
    let (px, py) = (Frac::of(&p.x), Frac::of(&p.y));
    let a = Frac::of(&q.x).sub(&px).mul(&Frac::of(&r.y).sub(&py));
    let b = Frac::of(&q.y).sub(&py).mul(&Frac::of(&r.x).sub(&px));
    a.sub(&b)
}

/// Exact `(q - p) x (r - p)`.
pub fn exact_cross(p: &Point, q: &Point, r: &Point) -> Scalar {
    cross_frac(p, q, r).reduce()
}

/// Twice the signed area of a closed vertex ring (positive when CCW).
pub(crate) fn twice_signed_area(vertices: &[Point]) -> Scalar {
    let n = vertices.len();
    if n == 0 {
        return Scalar::zero();
    }
    let f: Vec<(Frac, Frac)> = vertices.iter().map(|v| (Frac::of(&v.x), Frac::of(&v.y))).collect();
    let mut acc = f[n - 1].0.mul(&f[0].1).sub(&f[0].0.mul(&f[n - 1].1));
    for i in 0..n - 1 {
        let (a, b) = (&f[i], &f[i + 1]);
        acc = acc.add(&a.0.mul(&b.1).sub(&b.0.mul(&a.1)));
    }
    acc.reduce()
}

/// `true` when `p` lies on the closed segment `[a, b]`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    if cross_sign(a, b, p) != Ordering::Equal {
        return false;
    }
    within_box(a, b, p)
}

/// Assumes collinearity; checks the bounding box of `[a, b]` exactly.
pub(crate) fn within_box(a: &Point, b: &Point, p: &Point) -> bool {
    let cx = |u: &Point, v: &Point| approx_cmp(u.fx, v.fx).unwrap_or_else(|| u.x.cmp(&v.x));
    let cy = |u: &Point, v: &Point| approx_cmp(u.fy, v.fy).unwrap_or_else(|| u.y.cmp(&v.y));
    let in_x = cx(a, p) != cx(b, p) || cx(a, p) == Ordering::Equal;
    let in_y = cy(a, p) != cy(b, p) || cy(a, p) == Ordering::Equal;
    in_x && in_y
}

/// Closed-segment intersection test.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = cross_sign(a, b, c);
    let o2 = cross_sign(a, b, d);
    let o3 = cross_sign(c, d, a);
    let o4 = cross_sign(c, d, b);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == Ordering::Equal && within_box(a, b, c))
        || (o2 == Ordering::Equal && within_box(a, b, d))
        || (o3 == Ordering::Equal && within_box(c, d, a))
        || (o4 == Ordering::Equal && within_box(c, d, b))
}

/// Two segments cross at a single point interior to both.
pub fn segments_cross_properly(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = cross_sign(a, b, c);
    let o2 = cross_sign(a, b, d);
    let o3 = cross_sign(c, d, a);
    let o4 = cross_sign(c, d, b);
    o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
        && o1 != o2
        && o3 != o4
}

/// A closed segment with distinct endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeometryError> {
        if a == b {
            return Err(GeometryError::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }

    pub fn reversed(&self) -> Segment {
        Segment {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        on_segment(&self.a, &self.b, p)
    }

    /// Same point set, ignoring direction.
    pub fn same_as(&self, other: &Segment) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }

    /// `a + t (b - a)`.
    pub fn point_at(&self, t: &Scalar) -> Point {
        self.a.lerp(&self.b, t)
    }

    pub fn midpoint(&self) -> Point {
        self.a.midpoint(&self.b)
    }
}

/// Exact dot product of `(u)` and `(v)` given as component pairs.
pub(crate) fn dot(u: &(Scalar, Scalar), v: &(Scalar, Scalar)) -> Scalar {
    &u.0 * &v.0 + &u.1 * &v.1
}



#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::scalar::rat;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn orientation_basic() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::CounterClockwise);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), Orientation::Collinear);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 1)), Orientation::Clockwise);
    }

    #[test]
    fn orientation_near_degenerate_falls_back_to_exact() {
        // Third point is off the line y = x / 3 by 1e-30; floats cannot tell.
        let a = Point::new(rat(0, 1), rat(0, 1));
        let b = Point::new(rat(3, 1), rat(1, 1));
        let eps = num_rational::BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(30));
        let c_above = Point::new(rat(1, 1), rat(1, 3) + &eps);
        let c_below = Point::new(rat(1, 1), rat(1, 3) - &eps);
        let c_on = Point::new(rat(1, 1), rat(1, 3));
        assert_eq!(orientation(&a, &b, &c_above), Orientation::CounterClockwise);
        assert_eq!(orientation(&a, &b, &c_below), Orientation::Clockwise);
        assert_eq!(orientation(&a, &b, &c_on), Orientation::Collinear);
    }

    #[test]
    fn segment_tests() {
        assert!(segments_intersect(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        assert!(segments_cross_properly(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        // Touching at an endpoint.
        assert!(segments_intersect(&p(0, 0), &p(1, 1), &p(1, 1), &p(2, 0)));
        assert!(!segments_cross_properly(&p(0, 0), &p(1, 1), &p(1, 1), &p(2, 0)));
        // Collinear, disjoint.
        assert!(!segments_intersect(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)));
        // Collinear, overlapping.
        assert!(segments_intersect(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)));
        assert!(Segment::new(p(1, 1), p(1, 1)).is_err());
    }

    #[test]
    fn point_order_is_lexicographic() {
        let mut v = vec![p(1, 0), p(0, 5), p(0, -1)];
        v.sort();
        assert_eq!(v, vec![p(0, -1), p(0, 5), p(1, 0)]);
    }
}
