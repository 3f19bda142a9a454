//! Point and segment visibility inside a simple polygon.
//!
//! Visibility is closed: a sightline may touch the boundary (graze a reflex
//! vertex or run along an edge) and still count as unobstructed.

use crate::geometry::scalar::{to_f64, Frac};
use crate::geometry::{
    cross_sign, exact_cross, line_intersection, segments_intersect, Containment,
    ConvexRegion, Line, Orientation, Point, Scalar, Segment, SimplePolygon,
};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VisibilityError {
    #[error("point {0} lies outside the polygon")]
    InputOutsidePolygon(Point),
    #[error("segment {0} - {1} leaves the polygon")]
    SegmentOutsidePolygon(Point, Point),
}

fn check_inside(poly: &SimplePolygon, p: &Point) -> Result<(), VisibilityError> {
    if poly.locate(p) == Containment::Outside {
        return Err(VisibilityError::InputOutsidePolygon(p.clone()));
    }
    Ok(())
}

/// Whether `p` and `q` see each other inside `poly`.
pub fn sees(poly: &SimplePolygon, p: &Point, q: &Point) -> Result<bool, VisibilityError> {
    check_inside(poly, p)?;
    check_inside(poly, q)?;
    Ok(sees_unchecked(poly, p, q))
}

/// [`sees`] without the membership checks; both points must be in `poly`.
pub(crate) fn sees_unchecked(poly: &SimplePolygon, p: &Point, q: &Point) -> bool {
    if p == q {
        return true;
    }
    // Filtered pass: a proper crossing of an edge leaves the polygon, and a
    // segment touching no edge lies on one side of the boundary. Any contact
    // goes to the exact sweep below.
    let mut contact = false;
    for (u, v) in poly.edges() {
        let (o1, o2) = (cross_sign(p, q, u), cross_sign(p, q, v));
        if o1 == o2 && o1 != Ordering::Equal {
            continue;
        }
        let (o3, o4) = (cross_sign(u, v, p), cross_sign(u, v, q));
        if o3 == o4 && o3 != Ordering::Equal {
            continue;
        }
        if [o1, o2, o3, o4].iter().all(|o| *o != Ordering::Equal) {
            return false;
        }
        contact = true;
        break;
    }
    if !contact {
        return poly.locate(&p.midpoint(q)) != Containment::Outside;
    }
    let d = q.sub(p);
    let len2 = &d.0 * &d.0 + &d.1 * &d.1;
    let mut params: Vec<Scalar> = vec![Scalar::zero(), Scalar::one()];
    for (u, v) in poly.edges() {
        if !segments_intersect(p, q, u, v) {
            continue;
        }
        let cu = exact_cross(p, q, u);
        let cv = exact_cross(p, q, v);
        if cu.is_zero() && cv.is_zero() {
            // Collinear overlap: both edge endpoints become breakpoints.
            for w in [u, v] {
                let t = project(p, &d, &len2, w);
                if t.is_positive() && t < Scalar::one() {
                    params.push(t);
                }
            }
        } else {
            let fp = exact_cross(u, v, p);
            let fq = exact_cross(u, v, q);
            let denom = &fp - &fq;
            if !denom.is_zero() {
                params.push(fp / denom);
            }
        }
    }
    params.sort();
    params.dedup();
    let two = Scalar::from_integer(2.into());
    params.windows(2).all(|w| {
        let mid = p.lerp(q, &((&w[0] + &w[1]) / &two));
        poly.locate(&mid) != Containment::Outside
    })
}

fn project(p: &Point, d: &(Scalar, Scalar), len2: &Scalar, w: &Point) -> Scalar {
    let r = w.sub(p);
    (&r.0 * &d.0 + &r.1 * &d.1) / len2
}

/// Region of the polygon seen from a viewpoint, star-shaped about it.
///
/// The region is regularized: zero-width spikes of visibility along rays
/// that graze reflex vertices are not part of the polygon.
#[derive(Debug, Clone)]
pub struct VisibilityPolygon {
    pub region: SimplePolygon,
    pub viewpoint: Point,
    full: bool,
}

impl VisibilityPolygon {
    pub fn contains(&self, x: &Point) -> bool {
        self.region.contains(x)
    }

    /// The viewpoint sees the whole containing polygon.
    pub fn is_full(&self) -> bool {
        self.full
    }

    /// `region ⊆ VP`. In a polygon without holes a viewpoint that sees every
    /// vertex of a convex region sees the whole region.
    pub fn contains_convex(&self, region: &ConvexRegion) -> bool {
        self.full || region.vertices().iter().all(|v| self.contains(v))
    }

    /// Fan of convex triangles from the viewpoint covering the region.
    pub fn fan(&self) -> Vec<ConvexRegion> {
        let vs = self.region.vertices();
        let n = vs.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = &vs[i];
            let b = &vs[(i + 1) % n];
            if crate::geometry::orientation(&self.viewpoint, a, b) == Orientation::CounterClockwise {
                out.push(ConvexRegion::new(vec![self.viewpoint.clone(), a.clone(), b.clone()]).expect("positive area"));
            }
        }
        out
    }
}

type Dir = (Scalar, Scalar);

fn half(d: &Dir) -> u8 {
    if d.1.is_positive() || (d.1.is_zero() && d.0.is_positive()) {
        0
    } else {
        1
    }
}

fn cross(u: &Dir, v: &Dir) -> Scalar {
    &u.0 * &v.1 - &u.1 * &v.0
}

fn angle_cmp(u: &Dir, v: &Dir) -> Ordering {
    half(u).cmp(&half(v)).then_with(|| {
        let c = cross(u, v);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Sign of `x` when the float value clears `bound`, `None` otherwise.
fn filtered_sign(x: f64, bound: f64) -> Option<Ordering> {
    if !bound.is_finite() || bound <= 1e-280 {
        None
    } else if x > bound {
        Some(Ordering::Greater)
    } else if x < -bound {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Nearest hit of the ray `q + t m` (`t > 0`) with an edge crossing it
/// transversally. Returns the edge endpoints and `t`.
fn nearest_hit<'a>(poly: &'a SimplePolygon, q: &Point, m: &Dir) -> Option<(&'a Point, &'a Point, Scalar)> {
    const REL: f64 = 1e-12;
    let (qx, qy) = q.approx();
    let (mx, my) = (to_f64(&m.0), to_f64(&m.1));
    let mf = (Frac::of(&m.0), Frac::of(&m.1));
    // Best hit so far as t = num / den with den > 0.
    let mut best: Option<(&Point, &Point, Frac, Frac)> = None;
    for (u, v) in poly.edges() {
        let ((ux, uy), (vx, vy)) = (u.approx(), v.approx());
        let (wx, wy) = (vx - ux, vy - uy);
        let (ax, ay) = (ux - qx, uy - qy);
        // Cheap rejections: the edge is clearly parallel-free but misses.
        // Error bounds scale with the coordinates, not their differences.
        let (wxa, wya) = (ux.abs() + vx.abs(), uy.abs() + vy.abs());
        let (axa, aya) = (ux.abs() + qx.abs(), uy.abs() + qy.abs());
        let den = mx * wy - my * wx;
        let den_b = REL * (mx.abs() * wya + my.abs() * wxa);
        if let Some(ds) = filtered_sign(den, den_b) {
            let nt = ax * wy - ay * wx;
            let ns = ax * my - ay * mx;
            let ns_b = REL * (axa * my.abs() + aya * mx.abs());
            let flip = |o: Ordering| if ds == Ordering::Less { o.reverse() } else { o };
            let ts = filtered_sign(nt, REL * (axa * wya + aya * wxa)).map(flip);
            let ss = filtered_sign(ns, ns_b).map(flip);
            let s1 = filtered_sign(ns - den, ns_b + den_b).map(flip);
            if ts == Some(Ordering::Less) || ss == Some(Ordering::Less) || s1 == Some(Ordering::Greater) {
                continue;
            }
        }
        let w = (Frac::of(v.x()).sub(&Frac::of(u.x())), Frac::of(v.y()).sub(&Frac::of(u.y())));
        let mut den = mf.0.mul(&w.1).sub(&mf.1.mul(&w.0));
        if den.signum() == Ordering::Equal {
            continue;
        }
        let uq = (Frac::of(u.x()).sub(&Frac::of(q.x())), Frac::of(u.y()).sub(&Frac::of(q.y())));
        let mut nt = uq.0.mul(&w.1).sub(&uq.1.mul(&w.0));
        let mut ns = uq.0.mul(&mf.1).sub(&uq.1.mul(&mf.0));
        if den.signum() == Ordering::Less {
            den = den.neg();
            nt = nt.neg();
            ns = ns.neg();
        }
        if nt.signum() != Ordering::Greater
            || ns.signum() == Ordering::Less
            || ns.sub(&den).signum() == Ordering::Greater
        {
            continue;
        }
        let closer = best
            .as_ref()
            .map_or(true, |b| nt.mul(&b.3).sub(&b.2.mul(&den)).signum() == Ordering::Less);
        if closer {
            best = Some((u, v, nt, den));
        }
    }
    best.map(|(u, v, nt, den)| (u, v, nt.div(&den).reduce()))
}

/// Visibility polygon of `q`, computed by an angular sweep over the polygon
/// vertex directions.
pub fn visibility_polygon(poly: &SimplePolygon, q: &Point) -> Result<VisibilityPolygon, VisibilityError> {
    check_inside(poly, q)?;
    let mut dirs: Vec<Dir> = poly
        .vertices()
        .iter()
        .filter(|v| *v != q)
        .map(|v| v.sub(q))
        .collect();
    dirs.sort_by(angle_cmp);
    dirs.dedup_by(|a, b| angle_cmp(a, b) == Ordering::Equal);

    let n = dirs.len();
    let mut ring: Vec<Point> = Vec::with_capacity(2 * n);
    let two = Scalar::from_integer(2.into());
    for i in 0..n {
        let d0 = &dirs[i];
        let d1 = &dirs[(i + 1) % n];
        let c = cross(d0, d1);
        let m: Dir = if n == 1 {
            (-&d0.0, -&d0.1)
        } else if c.is_positive() {
            (&d0.0 + &d1.0, &d0.1 + &d1.1)
        } else if c.is_zero() {
            (-&d0.1, d0.0.clone())
        } else {
            (-(&d0.0 + &d1.0), -(&d0.1 + &d1.1))
        };
        let interior = match nearest_hit(poly, q, &m) {
            Some((u, v, t)) => {
                let probe = q.offset(&(&m.0 * &t / &two), &(&m.1 * &t / &two));
                if poly.locate(&probe) == Containment::Inside {
                    Some(Line::through(u, v).expect("distinct vertices"))
                } else {
                    None
                }
            }
            None => None,
        };
        match interior {
            Some(edge_line) => {
                for d in [d0, d1] {
                    let ray = Line::through(q, &q.offset(&d.0, &d.1)).expect("non-zero direction");
                    let hit = line_intersection(&ray, &edge_line).expect("edge line crosses the sector rays");
                    ring.push(hit);
                }
            }
            None => ring.push(q.clone()),
        }
    }
    ring.dedup();
    while ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    let ring = drop_collinear(ring);
    let region = SimplePolygon::new(ring).expect("visibility region is a simple polygon");
    let full = region.twice_area() == poly.twice_area();
    Ok(VisibilityPolygon {
        region,
        viewpoint: q.clone(),
        full,
    })
}

fn drop_collinear(mut pts: Vec<Point>) -> Vec<Point> {
    let mut changed = true;
    while changed && pts.len() > 3 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let prev = &pts[(i + n - 1) % n];
            let next = &pts[(i + 1) % n];
            if crate::geometry::orientation(prev, &pts[i], next) == Orientation::Collinear {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    pts
}

/// Points seeing every point of a segment: `VP(a) ∩ VP(b)`.
///
/// In a polygon without holes, a point seeing both endpoints sees the whole
/// closed triangle it spans with the segment, hence every segment point.
#[derive(Debug, Clone)]
pub struct CompleteVisibilityRegion {
    pub segment: Segment,
    pub from_a: VisibilityPolygon,
    pub from_b: VisibilityPolygon,
}

impl CompleteVisibilityRegion {
    pub fn contains(&self, x: &Point) -> bool {
        self.from_a.contains(x) && self.from_b.contains(x)
    }

    pub fn contains_convex(&self, region: &ConvexRegion) -> bool {
        self.from_a.contains_convex(region) && self.from_b.contains_convex(region)
    }

    pub fn is_full(&self) -> bool {
        self.from_a.is_full() && self.from_b.is_full()
    }

    /// Interior-disjoint convex pieces whose union is the region.
    pub fn pieces(&self) -> Vec<ConvexRegion> {
        let fa = self.from_a.fan();
        let fb = self.from_b.fan();
        let mut out = Vec::new();
        for ta in &fa {
            for tb in &fb {
                if !ta.interiors_overlap(tb) {
                    continue;
                }
                if let Some(c) = ta.intersection(tb) {
                    out.push(c);
                }
            }
        }
        out
    }

    pub fn area(&self) -> Scalar {
        self.pieces().iter().map(|p| p.area()).fold(Scalar::zero(), |a, b| a + b)
    }

    pub fn is_empty(&self) -> bool {
        self.pieces().is_empty()
    }
}

/// Complete-visibility region of `s`; `s` must lie inside the polygon.
pub fn complete_visibility_polygon(
    poly: &SimplePolygon,
    s: &Segment,
) -> Result<CompleteVisibilityRegion, VisibilityError> {
    let outside = || VisibilityError::SegmentOutsidePolygon(s.a.clone(), s.b.clone());
    if poly.locate(&s.a) == Containment::Outside || poly.locate(&s.b) == Containment::Outside {
        return Err(outside());
    }
    if !sees_unchecked(poly, &s.a, &s.b) {
        return Err(outside());
    }
    complete_visibility_from(poly, s, visibility_polygon(poly, &s.a)?, visibility_polygon(poly, &s.b)?)
}

/// Assembles the region from precomputed endpoint visibility polygons.
pub(crate) fn complete_visibility_from(
    _poly: &SimplePolygon,
    s: &Segment,
    from_a: VisibilityPolygon,
    from_b: VisibilityPolygon,
) -> Result<CompleteVisibilityRegion, VisibilityError> {
    debug_assert!(from_a.viewpoint == s.a && from_b.viewpoint == s.b);
    Ok(CompleteVisibilityRegion {
        segment: s.clone(),
        from_a,
        from_b,
    })
}
