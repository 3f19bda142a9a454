use super::point::{Point, FILTER_FLOOR, FILTER_REL};
use super::scalar::{to_f64, Frac, Scalar};
use super::GeometryError;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Which closed side of a line to keep.
///
/// A canonical line `A x + B y + C = 0` is directed along `(B, -A)`; `Left`
/// is the side where `A x + B y + C >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A line `A x + B y + C = 0` in canonical form: the first non-zero of
/// `(A, B)` is scaled to 1, so equal point sets compare equal.
#[derive(Clone)]
pub struct Line {
    a: Scalar,
    b: Scalar,
    c: Scalar,
    approx: [f64; 3],
}

impl Line {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self, GeometryError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeometryError::DegenerateLine);
        }
        let lead = if !a.is_zero() { a.clone() } else { b.clone() };
        let (a, b, c) = if lead.is_one() {
            (a, b, c)
        } else {
            (a / &lead, b / &lead, c / &lead)
        };
        let approx = [to_f64(&a), to_f64(&b), to_f64(&c)];
        Ok(Line { a, b, c, approx })
    }

    /// The line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Result<Self, GeometryError> {
        if p == q {
            return Err(GeometryError::DegenerateLine);
        }
        // Normalized directly so each coefficient is reduced once.
        let (px, py) = (Frac::of(p.x()), Frac::of(p.y()));
        let a = Frac::of(q.y()).sub(&py);
        let b = px.sub(&Frac::of(q.x()));
        let c = a.mul(&px).add(&b.mul(&py));
        let (a, b, c) = if a.signum() != Ordering::Equal {
            (Scalar::one(), b.div(&a).reduce(), c.div(&a).reduce())
        } else {
            (Scalar::zero(), Scalar::one(), c.div(&b).reduce())
        };
        let c = -c;
        let approx = [to_f64(&a), to_f64(&b), to_f64(&c)];
        Ok(Line { a, b, c, approx })
    }

    pub fn vertical(x: Scalar) -> Line {
        Line::new(Scalar::one(), Scalar::zero(), -x).expect("non-degenerate")
    }

    pub fn horizontal(y: Scalar) -> Line {
        Line::new(Scalar::zero(), Scalar::one(), -y).expect("non-degenerate")
    }

    pub fn coefficients(&self) -> (&Scalar, &Scalar, &Scalar) {
        (&self.a, &self.b, &self.c)
    }

    /// Exact `A x + B y + C`.
    pub fn eval(&self, p: &Point) -> Scalar {
        &self.a * p.x() + &self.b * p.y() + &self.c
    }

    /// Sign of `A x + B y + C`.
    pub fn side_sign(&self, p: &Point) -> Ordering {
        let (px, py) = p.approx();
        let [a, b, c] = self.approx;
        let v = a * px + b * py + c;
        let mag = (a * px).abs() + (b * py).abs() + c.abs();
        let bound = FILTER_REL * mag;
        if bound.is_finite() && mag > FILTER_FLOOR {
            if v > bound {
                return Ordering::Greater;
            }
            if v < -bound {
                return Ordering::Less;
            }
        }
        self.eval_frac(p).signum()
    }

    fn eval_frac(&self, p: &Point) -> Frac {
        let ax = Frac::of(&self.a).mul(&Frac::of(p.x()));
        let by = Frac::of(&self.b).mul(&Frac::of(p.y()));
        ax.add(&by).add(&Frac::of(&self.c))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.side_sign(p) == Ordering::Equal
    }

    /// Whether `p` is on the closed `side`.
    pub fn on_side(&self, p: &Point, side: Side) -> bool {
        match (side, self.side_sign(p)) {
            (_, Ordering::Equal) => true,
            (Side::Left, Ordering::Greater) | (Side::Right, Ordering::Less) => true,
            _ => false,
        }
    }

    /// The side of the line containing `p`, or `None` when `p` is on it.
    pub fn side_of(&self, p: &Point) -> Option<Side> {
        match self.side_sign(p) {
            Ordering::Greater => Some(Side::Left),
            Ordering::Less => Some(Side::Right),
            Ordering::Equal => None,
        }
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        (&self.a * &other.b - &other.a * &self.b).is_zero()
    }

    /// Point where segment `[u, v]` meets the line; the caller guarantees the
    /// endpoints are on strictly opposite sides or one is on the line.
    pub(crate) fn cut_segment(&self, u: &Point, v: &Point) -> Point {
        // (fu v - fv u) / (fu - fv), reduced once per coordinate.
        let fu = self.eval_frac(u);
        let fv = self.eval_frac(v);
        let den = fu.sub(&fv);
        let coord = |a: &Scalar, b: &Scalar| fu.mul(&Frac::of(b)).sub(&fv.mul(&Frac::of(a))).div(&den).reduce();
        Point::new(coord(u.x(), v.x()), coord(u.y(), v.y()))
    }
}

/// Unique intersection point of two lines; `None` when parallel or equal.
pub fn line_intersection(l1: &Line, l2: &Line) -> Option<Point> {
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return None;
    }
    let x = (&l1.b * &l2.c - &l2.b * &l1.c) / &det;
    let y = (&l2.a * &l1.c - &l1.a * &l2.c) / &det;
    Some(Point::new(x, y))
}

impl PartialEq for Line {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.c == other.c
    }
}

impl Eq for Line {}

impl Hash for Line {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        self.c.hash(state);
    }
}

impl Ord for Line {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a
            .cmp(&other.a)
            .then_with(|| self.b.cmp(&other.b))
            .then_with(|| self.c.cmp(&other.c))
    }
}

impl PartialOrd for Line {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line({}x + {}y + {} = 0)", self.a, self.b, self.c)
    }
}

/// A ray `origin + t * direction`, `t >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfLine {
    pub origin: Point,
    pub direction: (Scalar, Scalar),
}

impl HalfLine {
    pub fn new(origin: Point, direction: (Scalar, Scalar)) -> Result<Self, GeometryError> {
        if direction.0.is_zero() && direction.1.is_zero() {
            return Err(GeometryError::DegenerateHalfLine);
        }
        Ok(HalfLine { origin, direction })
    }

    /// Ray from `origin` pointing away from `toward`.
    pub fn away_from(origin: &Point, toward: &Point) -> Result<Self, GeometryError> {
        let d = origin.sub(toward);
        HalfLine::new(origin.clone(), d)
    }

    pub fn point_at(&self, t: &Scalar) -> Point {
        self.origin.offset(&(&self.direction.0 * t), &(&self.direction.1 * t))
    }

    pub fn line(&self) -> Line {
        let far = self.origin.offset(&self.direction.0, &self.direction.1);
        Line::through(&self.origin, &far).expect("direction is non-zero")
    }
}
