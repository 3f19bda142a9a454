use super::line::{Line, Side};
use super::point::{
    cross_sign, on_segment, orientation, segments_intersect, twice_signed_area, within_box,
    Orientation, Point, Segment,
};
use super::scalar::{int, Scalar};
use super::GeometryError;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

impl Containment {
    /// Inside or on the boundary.
    pub fn is_closed_member(self) -> bool {
        self != Containment::Outside
    }
}

/// Removes consecutive duplicates and vertices lying on the segment between
/// their neighbours. Spikes (collinear fold-backs) are removed as well.
fn clean_ring(mut pts: Vec<Point>) -> Vec<Point> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    let mut changed = true;
    while changed && pts.len() >= 3 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let prev = &pts[(i + n - 1) % n];
            let next = &pts[(i + 1) % n];
            if orientation(prev, &pts[i], next) == Orientation::Collinear {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    pts
}

/// Strictly convex, counter-clockwise polygon with positive area.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexRegion {
    vertices: Vec<Point>,
}

impl ConvexRegion {
    /// Validates and normalizes: drops duplicate and collinear vertices and
    /// reverses clockwise input.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        let mut pts = clean_ring(vertices);
        if pts.len() < 3 {
            return Err(GeometryError::ZeroArea);
        }
        let area2 = twice_signed_area(&pts);
        if area2.is_zero() {
            return Err(GeometryError::ZeroArea);
        }
        if area2.is_negative() {
            pts.reverse();
        }
        let n = pts.len();
        for i in 0..n {
            if orientation(&pts[i], &pts[(i + 1) % n], &pts[(i + 2) % n])
                != Orientation::CounterClockwise
            {
                return Err(GeometryError::NotConvex);
            }
        }
        // A pentagram turns left at every vertex but winds twice.
        if !is_simple_ring(&pts) {
            return Err(GeometryError::NotConvex);
        }
        Ok(ConvexRegion { vertices: pts })
    }

    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point>) -> Self {
        debug_assert!(vertices.len() >= 3);
        ConvexRegion { vertices }
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(x0: Scalar, y0: Scalar, x1: Scalar, y1: Scalar) -> Result<Self, GeometryError> {
        ConvexRegion::new(vec![
            Point::new(x0.clone(), y0.clone()),
            Point::new(x1.clone(), y0),
            Point::new(x1, y1.clone()),
            Point::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn edge_segments(&self) -> Vec<Segment> {
        self.edges()
            .map(|(a, b)| Segment {
                a: a.clone(),
                b: b.clone(),
            })
            .collect()
    }

    pub fn edge_lines(&self) -> Vec<Line> {
        self.edges()
            .map(|(a, b)| Line::through(a, b).expect("distinct vertices"))
            .collect()
    }

    pub fn twice_area(&self) -> Scalar {
        twice_signed_area(&self.vertices)
    }

    pub fn area(&self) -> Scalar {
        self.twice_area() / int(2)
    }

    /// Mean of the vertices; strictly interior.
    pub fn centroid(&self) -> Point {
        Point::centroid(&self.vertices)
    }

    pub fn locate(&self, p: &Point) -> Containment {
        let mut on_edge = false;
        for (a, b) in self.edges() {
            match cross_sign(a, b, p) {
                Ordering::Less => return Containment::Outside,
                Ordering::Equal => on_edge = true,
                Ordering::Greater => {}
            }
        }
        if on_edge {
            Containment::Boundary
        } else {
            Containment::Inside
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.locate(p) != Containment::Outside
    }

    pub fn contains_strictly(&self, p: &Point) -> bool {
        self.locate(p) == Containment::Inside
    }

    /// `other ⊆ self` (closed sets).
    pub fn contains_region(&self, other: &ConvexRegion) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Whether the closed segment `[u, v]` meets the open interior.
    pub fn segment_meets_interior(&self, u: &Point, v: &Point) -> bool {
        // Filtered shortcuts: both ends strictly outside one edge, or one end
        // strictly inside.
        let mut u_in = true;
        let mut v_in = true;
        for (a, b) in self.edges() {
            let su = super::point::cross_sign(a, b, u);
            let sv = super::point::cross_sign(a, b, v);
            if su == Ordering::Less && sv == Ordering::Less {
                return false;
            }
            u_in &= su == Ordering::Greater;
            v_in &= sv == Ordering::Greater;
        }
        if u_in || v_in {
            return true;
        }
        // Feasible parameters t in [0, 1] with every edge function > 0.
        let mut lo = Scalar::zero();
        let mut lo_strict = false;
        let mut hi = Scalar::from_integer(1.into());
        let mut hi_strict = false;
        for (a, b) in self.edges() {
            let fu = super::point::exact_cross(a, b, u);
            let fv = super::point::exact_cross(a, b, v);
            let slope = &fv - &fu;
            if slope.is_zero() {
                if !fu.is_positive() {
                    return false;
                }
                continue;
            }
            // f(t) = fu + t * slope > 0
            let root = -&fu / &slope;
            if slope.is_positive() {
                if root >= lo {
                    lo = root;
                    lo_strict = true;
                }
            } else if root <= hi {
                hi = root;
                hi_strict = true;
            }
        }
        match lo.cmp(&hi) {
            Ordering::Less => true,
            Ordering::Equal => !lo_strict && !hi_strict,
            Ordering::Greater => false,
        }
    }

    /// `self ∩ other`, or `None` when the overlap has zero area.
    pub fn intersection(&self, other: &ConvexRegion) -> Option<ConvexRegion> {
        let mut cur = self.clone();
        let c = other.centroid();
        for (a, b) in other.edges() {
            let l = Line::through(a, b).expect("distinct vertices");
            let inner = l.side_of(&c).expect("centroid is interior");
            cur = clip_convex_by_halfplane(&cur, &l, inner)?;
        }
        Some(cur)
    }

    /// Both interiors overlap.
    pub fn interiors_overlap(&self, other: &ConvexRegion) -> bool {
        !separated(self, other) && !separated(other, self)
    }

    /// Rotates so the lexicographically smallest vertex comes first.
    pub fn canonicalize(&mut self) {
        let (idx, _) = self
            .vertices
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .expect("non-empty");
        self.vertices.rotate_left(idx);
    }

    pub fn min_vertex(&self) -> &Point {
        self.vertices.iter().min().expect("non-empty")
    }

    /// Whether `line` passes through the interior.
    pub fn crossed_by(&self, line: &Line) -> bool {
        let (mut pos, mut neg) = (false, false);
        for v in &self.vertices {
            match line.side_sign(v) {
                Ordering::Greater => pos = true,
                Ordering::Less => neg = true,
                Ordering::Equal => {}
            }
            if pos && neg {
                return true;
            }
        }
        false
    }

    /// Splits by a line. Returns the parts on the left and right closed
    /// sides; a part is `None` when it would have zero area.
    pub fn split(&self, line: &Line) -> (Option<ConvexRegion>, Option<ConvexRegion>) {
        let signs: Vec<Ordering> = self.vertices.iter().map(|v| line.side_sign(v)).collect();
        let any_pos = signs.iter().any(|s| *s == Ordering::Greater);
        let any_neg = signs.iter().any(|s| *s == Ordering::Less);
        if !any_neg {
            return (Some(self.clone()), None);
        }
        if !any_pos {
            return (None, Some(self.clone()));
        }
        let n = self.vertices.len();
        let mut left = Vec::with_capacity(n + 2);
        let mut right = Vec::with_capacity(n + 2);
        for i in 0..n {
            let j = (i + 1) % n;
            let (u, su) = (&self.vertices[i], signs[i]);
            let (v, sv) = (&self.vertices[j], signs[j]);
            match su {
                Ordering::Greater => left.push(u.clone()),
                Ordering::Less => right.push(u.clone()),
                Ordering::Equal => {
                    left.push(u.clone());
                    right.push(u.clone());
                }
            }
            if (su == Ordering::Greater && sv == Ordering::Less)
                || (su == Ordering::Less && sv == Ordering::Greater)
            {
                let x = line.cut_segment(u, v);
                left.push(x.clone());
                right.push(x);
            }
        }
        (
            Some(ConvexRegion::from_ccw_unchecked(left)),
            Some(ConvexRegion::from_ccw_unchecked(right)),
        )
    }

    /// Approximate bounding box `(min_x, min_y, max_x, max_y)` for display.
    pub fn approx_bbox(&self) -> (f64, f64, f64, f64) {
        approx_bbox(&self.vertices)
    }
}

/// Separating-axis test on `a`'s edges: some edge line of `a` has all of `b`
/// on its closed outer side.
fn separated(a: &ConvexRegion, b: &ConvexRegion) -> bool {
    a.edges().any(|(p, q)| {
        b.vertices
            .iter()
            .all(|v| cross_sign(p, q, v) != Ordering::Greater)
    })
}

pub(crate) fn approx_bbox(pts: &[Point]) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        let (x, y) = p.approx();
        b.0 = b.0.min(x);
        b.1 = b.1.min(y);
        b.2 = b.2.max(x);
        b.3 = b.3.max(y);
    }
    b
}

/// Clips a convex region to one closed side of a line. Vertices on the line
/// are kept; zero-area results are `None`.
pub fn clip_convex_by_halfplane(
    region: &ConvexRegion,
    boundary: &Line,
    keep_side: Side,
) -> Option<ConvexRegion> {
    let (left, right) = region.split(boundary);
    match keep_side {
        Side::Left => left,
        Side::Right => right,
    }
}

/// Ring without self-intersections (closed-segment test between
/// non-adjacent edges, overlap test between adjacent ones).
fn is_simple_ring(pts: &[Point]) -> bool {
    simplicity_violation(pts).is_none()
}

fn simplicity_violation(pts: &[Point]) -> Option<(usize, usize)> {
    let n = pts.len();
    for i in 0..n {
        let a = &pts[i];
        let b = &pts[(i + 1) % n];
        // Adjacent edge (b, c): must not fold back over (a, b).
        let c = &pts[(i + 2) % n];
        if n > 2 && orientation(a, b, c) == Orientation::Collinear {
            let ab = b.sub(a);
            let bc = c.sub(b);
            if super::point::dot(&ab, &bc).is_negative() {
                return Some((i, (i + 1) % n));
            }
        }
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let c = &pts[j];
            let d = &pts[(j + 1) % n];
            if segments_intersect(a, b, c, d) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Simple polygon without holes, counter-clockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
}

impl SimplePolygon {
    /// Validates simplicity and orientation; clockwise input is reversed.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        let mut sorted: Vec<&Point> = vertices.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(GeometryError::RepeatedVertex);
        }
        let mut vertices = vertices;
        if let Some((i, j)) = simplicity_violation(&vertices) {
            return Err(GeometryError::NotSimple(i, j));
        }
        let area2 = twice_signed_area(&vertices);
        if area2.is_zero() {
            return Err(GeometryError::ZeroArea);
        }
        if area2.is_negative() {
            vertices.reverse();
        }
        Ok(SimplePolygon { vertices })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self, GeometryError> {
        SimplePolygon::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Supporting lines of the edges, deduplicated, in edge order.
    pub fn edge_lines(&self) -> Vec<Line> {
        let mut out: Vec<Line> = Vec::with_capacity(self.len());
        for (a, b) in self.edges() {
            let l = Line::through(a, b).expect("distinct vertices");
            if !out.contains(&l) {
                out.push(l);
            }
        }
        out
    }

    pub fn twice_area(&self) -> Scalar {
        twice_signed_area(&self.vertices)
    }

    pub fn area(&self) -> Scalar {
        self.twice_area() / int(2)
    }

    /// Interior angle at vertex `i` exceeds pi.
    pub fn is_reflex(&self, i: usize) -> bool {
        let n = self.len();
        let prev = &self.vertices[(i + n - 1) % n];
        let next = &self.vertices[(i + 1) % n];
        orientation(prev, &self.vertices[i], next) == Orientation::Clockwise
    }

    pub fn reflex_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_reflex(i)).collect()
    }

    pub fn is_convex(&self) -> bool {
        self.reflex_indices().is_empty()
    }

    /// Exact point location (winding number with boundary detection).
    pub fn locate(&self, p: &Point) -> Containment {
        let (px, py) = p.approx();
        let mut winding = 0i64;
        for (u, v) in self.edges() {
            let (_, uy) = u.approx();
            let (_, vy) = v.approx();
            // Edges whose y-range clearly misses p can neither contain p nor
            // cross the horizontal ray from it.
            let tol = 1e-9 * (1.0 + uy.abs().max(vy.abs()).max(py.abs()).max(px.abs()));
            if py < uy.min(vy) - tol || py > uy.max(vy) + tol {
                continue;
            }
            let s = cross_sign(u, v, p);
            if s == Ordering::Equal && within_box(u, v, p) {
                return Containment::Boundary;
            }
            let (u_above, v_above) = (u.cmp_y(p) == Ordering::Greater, v.cmp_y(p) == Ordering::Greater);
            if !u_above {
                if v_above && s == Ordering::Greater {
                    winding += 1;
                }
            } else if !v_above && s == Ordering::Less {
                winding -= 1;
            }
        }
        if winding != 0 {
            Containment::Inside
        } else {
            Containment::Outside
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.locate(p).is_closed_member()
    }

    /// `region ⊆ self` (closed sets): every vertex inside and no boundary
    /// edge of `self` enters the interior of `region`.
    pub fn contains_convex(&self, region: &ConvexRegion) -> bool {
        if !region.vertices().iter().all(|v| self.contains(v)) {
            return false;
        }
        let (bx0, by0, bx1, by1) = region.approx_bbox();
        let pad = 1e-9 * (1.0 + bx0.abs().max(bx1.abs()).max(by0.abs()).max(by1.abs()));
        !self.edges().any(|(u, v)| {
            let (ux, uy) = u.approx();
            let (vx, vy) = v.approx();
            if ux.max(vx) < bx0 - pad
                || ux.min(vx) > bx1 + pad
                || uy.max(vy) < by0 - pad
                || uy.min(vy) > by1 + pad
            {
                return false;
            }
            region.segment_meets_interior(u, v)
        })
    }

    /// Whether the point lies on the polygon boundary.
    pub fn on_boundary(&self, p: &Point) -> bool {
        self.edges().any(|(u, v)| on_segment(u, v, p))
    }

    pub fn approx_bbox(&self) -> (f64, f64, f64, f64) {
        approx_bbox(&self.vertices)
    }

    /// Exact bounding box as `(min_x, min_y, max_x, max_y)`.
    pub fn bbox(&self) -> (Scalar, Scalar, Scalar, Scalar) {
        let xs = self.vertices.iter().map(|p| p.x());
        let ys = self.vertices.iter().map(|p| p.y());
        (
            xs.clone().min().expect("non-empty").clone(),
            ys.clone().min().expect("non-empty").clone(),
            xs.max().expect("non-empty").clone(),
            ys.max().expect("non-empty").clone(),
        )
    }

    /// View of a convex polygon as a `ConvexRegion`.
    pub fn to_convex(&self) -> Result<ConvexRegion, GeometryError> {
        ConvexRegion::new(self.vertices.clone())
    }
}

impl From<&ConvexRegion> for SimplePolygon {
    fn from(c: &ConvexRegion) -> Self {
        SimplePolygon {
            vertices: c.vertices().to_vec(),
        }
    }
}
