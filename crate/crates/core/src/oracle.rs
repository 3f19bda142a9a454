//! Brute-force reference implementations used to check the main modules.
//!
//! Nothing here calls into the visibility, decomposition or guarding code;
//! the only shared geometric routine is [`orientation`].

use crate::geometry::{orientation, ConvexRegion, Line, Orientation, Point, Scalar, SimplePolygon};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashSet};

fn between(a: &Point, b: &Point, p: &Point) -> bool {
    // Coordinates are compared exactly; the float box only rejects early.
    let ((ax, ay), (bx, by), (px, py)) = (a.approx(), b.approx(), p.approx());
    let slack = 1e-9 * (1.0 + ax.abs().max(bx.abs()).max(ay.abs()).max(by.abs()));
    if px < ax.min(bx) - slack || px > ax.max(bx) + slack || py < ay.min(by) - slack || py > ay.max(by) + slack {
        return false;
    }
    let (x0, x1) = if a.x() <= b.x() { (a.x(), b.x()) } else { (b.x(), a.x()) };
    let (y0, y1) = if a.y() <= b.y() { (a.y(), b.y()) } else { (b.y(), a.y()) };
    x0 <= p.x() && p.x() <= x1 && y0 <= p.y() && p.y() <= y1
}

fn on_closed_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orientation(a, b, p) == Orientation::Collinear && between(a, b, p)
}

fn not_cw(a: &Point, b: &Point, c: &Point) -> bool {
    orientation(a, b, c) != Orientation::Clockwise
}

/// Whether the direction from polygon vertex `i` toward `t` starts into the
/// closed interior.
fn vertex_cone_admits(poly: &SimplePolygon, i: usize, t: &Point) -> bool {
    let vs = poly.vertices();
    let n = vs.len();
    let w = &vs[(i + n - 1) % n];
    let v = &vs[i];
    let x = &vs[(i + 1) % n];
    let after = not_cw(v, x, t);
    let before = not_cw(w, v, t);
    if orientation(w, v, x) == Orientation::Clockwise {
        after || before
    } else {
        after && before
    }
}

/// Whether the direction from boundary point `p` toward `t` starts into the
/// closed interior. `p` must not be a vertex.
fn boundary_point_admits(poly: &SimplePolygon, p: &Point, t: &Point) -> bool {
    let vs = poly.vertices();
    let n = vs.len();
    (0..n).all(|i| {
        let u = &vs[i];
        let v = &vs[(i + 1) % n];
        !(between(u, v, p) && orientation(u, v, p) == Orientation::Collinear) || not_cw(u, v, t)
    })
}

/// Edge-scan visibility test: no proper crossing with any edge, and every
/// boundary contact leaves the segment inside the closed polygon locally.
pub fn oracle_sees(poly: &SimplePolygon, p: &Point, q: &Point) -> bool {
    if p == q {
        return true;
    }
    let vs = poly.vertices();
    let n = vs.len();
    let side: Vec<Orientation> = vs.iter().map(|u| orientation(p, q, u)).collect();
    for i in 0..n {
        let (o1, o2) = (side[i], side[(i + 1) % n]);
        if o1 == Orientation::Collinear || o2 == Orientation::Collinear || o1 == o2 {
            continue;
        }
        let o3 = orientation(&vs[i], &vs[(i + 1) % n], p);
        let o4 = orientation(&vs[i], &vs[(i + 1) % n], q);
        if o3 != Orientation::Collinear && o4 != Orientation::Collinear && o3 != o4 {
            return false;
        }
    }
    for (i, v) in vs.iter().enumerate() {
        if side[i] != Orientation::Collinear || !between(p, q, v) {
            continue;
        }
        if v != p && !vertex_cone_admits(poly, i, p) {
            return false;
        }
        if v != q && !vertex_cone_admits(poly, i, q) {
            return false;
        }
    }
    for (end, other) in [(p, q), (q, p)] {
        if !vs.contains(end) && !boundary_point_admits(poly, end, other) {
            return false;
        }
    }
    true
}

/// Crossing-number point location; boundary points count as inside.
pub fn oracle_contains(poly: &SimplePolygon, p: &Point) -> bool {
    let vs = poly.vertices();
    let n = vs.len();
    let mut inside = false;
    for i in 0..n {
        let u = &vs[i];
        let v = &vs[(i + 1) % n];
        if on_closed_segment(u, v, p) {
            return true;
        }
        if (u.y() > p.y()) != (v.y() > p.y()) {
            // Edge crosses the horizontal through p; is the crossing right of p?
            let o = orientation(u, v, p);
            let upward = v.y() > u.y();
            if (upward && o == Orientation::CounterClockwise) || (!upward && o == Orientation::Clockwise) {
                inside = !inside;
            }
        }
    }
    inside
}

/// Seeded points in a region.
#[derive(Debug, Clone)]
pub struct SampleSet {
    pub points: Vec<Point>,
    pub seed: u64,
}

/// `count` strictly interior points of a convex region: random convex
/// combinations of its vertices with positive integer weights.
pub fn sample_convex(region: &ConvexRegion, count: usize, seed: u64) -> SampleSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..count).map(|_| random_convex_combination(region, &mut rng)).collect();
    SampleSet { points, seed }
}

pub(crate) fn random_convex_combination(region: &ConvexRegion, rng: &mut impl Rng) -> Point {
    let mut sx = Scalar::zero();
    let mut sy = Scalar::zero();
    let mut total = 0i64;
    for v in region.vertices() {
        // Skewed weights spread samples toward corners as well as the middle.
        let w: i64 = if rng.gen_bool(0.5) {
            rng.gen_range(1..=1000)
        } else {
            rng.gen_range(1..=20)
        };
        let ws = Scalar::from_integer(w.into());
        sx += v.x() * &ws;
        sy += v.y() * &ws;
        total += w;
    }
    let t = Scalar::from_integer(total.into());
    Point::new(sx / &t, sy / t)
}

/// Vertices of a convex region pulled toward its vertex centroid by 1/1024.
pub fn nudged_vertices(region: &ConvexRegion) -> Vec<Point> {
    let n = region.vertices().len() as i64;
    let mut cx = Scalar::zero();
    let mut cy = Scalar::zero();
    for v in region.vertices() {
        cx += v.x();
        cy += v.y();
    }
    let nn = Scalar::from_integer(n.into());
    cx /= &nn;
    cy /= &nn;
    let t = Scalar::new(1.into(), 1024.into());
    let one_minus = Scalar::one() - &t;
    region
        .vertices()
        .iter()
        .map(|v| Point::new(v.x() * &one_minus + &cx * &t, v.y() * &one_minus + &cy * &t))
        .collect()
}

/// Ids of the cells that `p` sees completely, judged by the cell's exact
/// vertices, its nudged vertices and `per_cell_samples` seeded interior
/// samples. The exact vertices matter: a cell whose corner alone is hidden
/// is not seen completely, and the nudged copies can miss that.
pub fn oracle_visible_list(
    poly: &SimplePolygon,
    p: &Point,
    cells: &[(usize, ConvexRegion)],
    per_cell_samples: usize,
    seed: u64,
) -> BTreeSet<usize> {
    CellSamples::new(cells, per_cell_samples, seed).visible_list(poly, p)
}

/// Probe points of every cell, drawn once and reused across queries.
#[derive(Debug, Clone)]
pub struct CellSamples {
    cells: Vec<(usize, Vec<Point>)>,
}

impl CellSamples {
    pub fn new(cells: &[(usize, ConvexRegion)], per_cell_samples: usize, seed: u64) -> Self {
        let cells = cells
            .iter()
            .map(|(id, cell)| {
                let samples = sample_convex(cell, per_cell_samples, seed ^ (*id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let mut probes = cell.vertices().to_vec();
                probes.extend(nudged_vertices(cell));
                probes.extend(samples.points);
                (*id, probes)
            })
            .collect();
        CellSamples { cells }
    }

    /// Same answer as [`oracle_visible_list`] with the same parameters.
    pub fn visible_list(&self, poly: &SimplePolygon, p: &Point) -> BTreeSet<usize> {
        self.cells
            .iter()
            .filter(|(_, probes)| probes.iter().all(|x| oracle_sees(poly, p, x)))
            .map(|(id, _)| *id)
            .collect()
    }
}

fn y_at(line: &Line, x: &Scalar) -> Scalar {
    let (a, b, c) = line.coefficients();
    -(a * x + c) / b
}

fn cramer(l1: &Line, l2: &Line) -> Option<(Scalar, Scalar)> {
    let (a1, b1, c1) = l1.coefficients();
    let (a2, b2, c2) = l2.coefficients();
    let det = a1 * b2 - a2 * b1;
    if det.is_zero() {
        return None;
    }
    Some(((b1 * c2 - b2 * c1) / &det, (a2 * c1 - a1 * c2) / det))
}

/// Face count and total area of the arrangement of `lines` inside `clip`,
/// by vertical slabs: between consecutive event abscissae the non-vertical
/// lines are totally ordered, so every face restricted to a slab is a stack
/// of trapezoids. Faces are identified by their side-of-line sign vectors.
pub fn oracle_arrangement_count(lines: &[Line], clip: &SimplePolygon) -> (usize, Scalar) {
    let unique: Vec<&Line> = {
        let mut seen = HashSet::new();
        lines.iter().filter(|l| seen.insert((*l).clone())).collect()
    };
    let xs_clip: Vec<&Scalar> = clip.vertices().iter().map(|v| v.x()).collect();
    let xmin = (*xs_clip.iter().min().expect("non-empty")).clone();
    let xmax = (*xs_clip.iter().max().expect("non-empty")).clone();
    let mut xs: BTreeSet<Scalar> = xs_clip.into_iter().cloned().collect();
    for (i, l1) in unique.iter().enumerate() {
        let (_, b, c) = l1.coefficients();
        if b.is_zero() {
            xs.insert(-c.clone());
        }
        for l2 in &unique[i + 1..] {
            if let Some((x, _)) = cramer(l1, l2) {
                xs.insert(x);
            }
        }
    }
    let xs: Vec<Scalar> = xs.into_iter().filter(|x| *x >= xmin && *x <= xmax).collect();
    let sloped: Vec<&Line> = unique.iter().copied().filter(|l| !l.coefficients().1.is_zero()).collect();
    let two = Scalar::from_integer(2.into());
    let mut signatures: HashSet<Vec<i8>> = HashSet::new();
    let mut area = Scalar::zero();
    for w in xs.windows(2) {
        let (x0, x1) = (&w[0], &w[1]);
        let xm = (x0 + x1) / &two;
        let mut stack: Vec<(Scalar, &Line)> = sloped.iter().map(|l| (y_at(l, &xm), *l)).collect();
        stack.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in stack.windows(2) {
            let (lo, hi) = (pair[0].1, pair[1].1);
            if pair[0].0 == pair[1].0 {
                continue;
            }
            let ym = (&pair[0].0 + &pair[1].0) / &two;
            let probe = Point::new(xm.clone(), ym.clone());
            if !oracle_contains(clip, &probe) {
                continue;
            }
            let h0 = y_at(hi, x0) - y_at(lo, x0);
            let h1 = y_at(hi, x1) - y_at(lo, x1);
            area += (x1 - x0) * (h0 + h1) / &two;
            let sig: Vec<i8> = unique
                .iter()
                .map(|l| {
                    let (a, b, c) = l.coefficients();
                    let v = a * &xm + b * &ym + c;
                    if v.is_positive() {
                        1
                    } else if v.is_negative() {
                        -1
                    } else {
                        0
                    }
                })
                .collect();
            signatures.insert(sig);
        }
    }
    (signatures.len(), area)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::scalar::{int, rat};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn pr(a: i64, b: i64, c: i64, d: i64) -> Point {
        Point::new(rat(a, b), rat(c, d))
    }

    fn square() -> SimplePolygon {
        SimplePolygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    fn l_shape() -> SimplePolygon {
        SimplePolygon::from_ints(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn sees_basics() {
        assert!(oracle_sees(&square(), &p(0, 0), &p(1, 1)));
        let l = l_shape();
        assert!(!oracle_sees(&l, &pr(3, 2, 1, 2), &pr(1, 2, 7, 4)));
        assert!(oracle_sees(&l, &pr(3, 2, 1, 2), &pr(1, 2, 3, 2)));
        assert!(oracle_sees(&l, &pr(3, 2, 1, 2), &p(1, 1)));
        assert!(oracle_sees(&l, &p(2, 1), &p(1, 1)));
        // Along the top edge of the lower arm, then through the interior.
        assert!(oracle_sees(&l, &p(2, 1), &pr(1, 2, 1, 1)));
        assert!(!oracle_sees(&l, &p(2, 1), &pr(1, 2, 3, 2)));
        // Chord through the exterior notch between two boundary points.
        assert!(!oracle_sees(&l, &p(2, 1), &p(1, 2)));
    }

    #[test]
    fn contains_basics() {
        let l = l_shape();
        assert!(oracle_contains(&l, &pr(1, 2, 1, 2)));
        assert!(oracle_contains(&l, &p(1, 1)));
        assert!(!oracle_contains(&l, &pr(3, 2, 3, 2)));
        assert!(!oracle_contains(&l, &p(-1, 1)));
    }

    #[test]
    fn samples_are_interior_and_reproducible() {
        let c = ConvexRegion::new(vec![p(0, 0), p(3, 0), p(0, 3)]).unwrap();
        let a = sample_convex(&c, 30, 7);
        let b = sample_convex(&c, 30, 7);
        assert_eq!(a.points, b.points);
        assert!(a.points.iter().all(|x| c.contains_strictly(x)));
        assert!(nudged_vertices(&c).iter().all(|x| c.contains_strictly(x)));
    }

    #[test]
    fn arrangement_small_cases() {
        let sq = square();
        let mut lines = sq.edge_lines();
        lines.push(Line::through(&p(0, 0), &p(1, 1)).unwrap());
        lines.push(Line::through(&p(1, 0), &p(0, 1)).unwrap());
        assert_eq!(oracle_arrangement_count(&lines, &sq), (4, int(1)));
        let t = SimplePolygon::from_ints(&[(0, 0), (4, 0), (0, 3)]).unwrap();
        assert_eq!(oracle_arrangement_count(&t.edge_lines(), &t), (1, int(6)));
    }

    #[test]
    fn visible_list_in_convex_is_everything() {
        let sq = square();
        let cells = vec![
            (0, ConvexRegion::new(vec![p(0, 0), p(1, 0), pr(1, 2, 1, 2)]).unwrap()),
            (1, ConvexRegion::new(vec![p(1, 0), p(1, 1), pr(1, 2, 1, 2)]).unwrap()),
        ];
        let vl = oracle_visible_list(&sq, &pr(1, 10, 9, 10), &cells, 10, 3);
        assert_eq!(vl.into_iter().collect::<Vec<_>>(), vec![0, 1]);
    }
}
