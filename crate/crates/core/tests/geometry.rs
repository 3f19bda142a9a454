use gridguard::geometry::scalar::{int, rat};
use gridguard::geometry::{
    arrangement_faces, clip_convex_by_halfplane, line_intersection, orientation, ConvexRegion, Line, Orientation,
    Point, Scalar, Side, SimplePolygon,
};
use gridguard::oracle::oracle_arrangement_count;
use num_traits::Zero;
use proptest::prelude::*;

fn pt(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

fn l_shape() -> SimplePolygon {
    SimplePolygon::from_ints(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap()
}

fn pair_lines(p: &SimplePolygon) -> Vec<Line> {
    let v = p.vertices();
    let mut out: Vec<Line> = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let l = Line::through(&v[i], &v[j]).unwrap();
            if !out.contains(&l) {
                out.push(l);
            }
        }
    }
    out
}

#[test]
fn orientation_of_simple_triples() {
    assert_eq!(orientation(&pt(0, 0), &pt(1, 0), &pt(0, 1)), Orientation::CounterClockwise);
    assert_eq!(orientation(&pt(0, 0), &pt(0, 1), &pt(1, 0)), Orientation::Clockwise);
    assert_eq!(orientation(&pt(0, 0), &pt(1, 1), &pt(3, 3)), Orientation::Collinear);
}

#[test]
fn tiny_offsets_are_not_collinear() {
    let eps = rat(1, 1_000_000_000_000_000_000);
    let r = Point::new(int(2), &int(2) + &eps);
    assert_eq!(orientation(&pt(0, 0), &pt(1, 1), &r), Orientation::CounterClockwise);
}

#[test]
fn diagonals_meet_in_the_middle() {
    let a = Line::through(&pt(0, 0), &pt(1, 1)).unwrap();
    let b = Line::through(&pt(1, 0), &pt(0, 1)).unwrap();
    assert_eq!(line_intersection(&a, &b), Some(Point::new(rat(1, 2), rat(1, 2))));
    let c = Line::through(&pt(0, 1), &pt(1, 2)).unwrap();
    assert_eq!(line_intersection(&a, &c), None);
}

#[test]
fn clipping_square_by_diagonal() {
    let sq = ConvexRegion::rectangle(int(0), int(0), int(1), int(1)).unwrap();
    let d = Line::through(&pt(0, 0), &pt(1, 1)).unwrap();
    let left = clip_convex_by_halfplane(&sq, &d, Side::Left).unwrap();
    let right = clip_convex_by_halfplane(&sq, &d, Side::Right).unwrap();
    assert_eq!(left.area(), rat(1, 2));
    assert_eq!(right.area(), rat(1, 2));
    // A line touching only a corner leaves the whole square on one side.
    let t = Line::through(&pt(1, 1), &pt(2, 0)).unwrap();
    let (a, b) = sq.split(&t);
    assert!(a.is_none() != b.is_none());
    assert!(!sq.crossed_by(&t));
}

#[test]
fn square_with_diagonals_has_four_triangles() {
    let sq = SimplePolygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
    let faces = arrangement_faces(&pair_lines(&sq), &sq).unwrap();
    assert_eq!(faces.len(), 4);
    assert!(faces.iter().all(|f| f.len() == 3 && f.area() == rat(1, 4)));
}

#[test]
fn l_shape_arrangement_matches_slab_oracle() {
    let l = l_shape();
    let lines = pair_lines(&l);
    let faces = arrangement_faces(&lines, &l).unwrap();
    let (count, area) = oracle_arrangement_count(&lines, &l);
    assert_eq!(faces.len(), count);
    assert_eq!(area, l.area());
    let total: Scalar = faces.iter().map(|f| f.area()).sum();
    assert_eq!(total, int(3));
}

#[test]
fn arrangement_is_deterministic() {
    let l = l_shape();
    let mut lines = pair_lines(&l);
    let a = arrangement_faces(&lines, &l).unwrap();
    lines.reverse();
    let b = arrangement_faces(&lines, &l).unwrap();
    assert_eq!(a, b);
}

fn small_point() -> impl Strategy<Value = Point> {
    (-20i64..=20, -20i64..=20, 1i64..=7, 1i64..=7).prop_map(|(x, y, dx, dy)| Point::new(rat(x, dx), rat(y, dy)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn split_preserves_area(a in small_point(), b in small_point()) {
        prop_assume!(a != b);
        let sq = ConvexRegion::rectangle(int(-2), int(-2), int(3), int(2)).unwrap();
        let l = Line::through(&a, &b).unwrap();
        let (left, right) = sq.split(&l);
        let total = left.as_ref().map(|r| r.area()).unwrap_or_else(Scalar::zero)
            + right.as_ref().map(|r| r.area()).unwrap_or_else(Scalar::zero);
        prop_assert_eq!(total, sq.area());
        prop_assert_eq!(sq.crossed_by(&l), left.is_some() && right.is_some());
        for part in left.iter().chain(right.iter()) {
            prop_assert!(ConvexRegion::new(part.vertices().to_vec()).is_ok());
        }
    }

    #[test]
    fn arrangement_tiles_the_clip(ps in proptest::collection::vec((small_point(), small_point()), 1..6)) {
        let l = l_shape();
        let mut lines = l.edge_lines();
        for (a, b) in &ps {
            if a != b {
                lines.push(Line::through(a, b).unwrap());
            }
        }
        let faces = arrangement_faces(&lines, &l).unwrap();
        let total: Scalar = faces.iter().map(|f| f.area()).sum();
        prop_assert_eq!(total, l.area());
        for (i, f) in faces.iter().enumerate() {
            for g in &faces[i + 1..] {
                prop_assert!(!f.interiors_overlap(g));
            }
        }
        prop_assert_eq!(faces.len(), oracle_arrangement_count(&lines, &l).0);
    }

    #[test]
    fn orientation_is_antisymmetric(a in small_point(), b in small_point(), c in small_point()) {
        prop_assert_eq!(orientation(&a, &b, &c), orientation(&b, &a, &c).reversed());
        prop_assert_eq!(orientation(&a, &b, &c), orientation(&b, &c, &a));
    }
}
