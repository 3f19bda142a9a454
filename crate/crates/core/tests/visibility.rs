use gridguard::geometry::scalar::{int, rat};
use gridguard::geometry::{Point, Segment, SimplePolygon};
use gridguard::io::parse_polygon;
use gridguard::oracle::oracle_sees;
use gridguard::setcover::sample_polygon;
use gridguard::visibility::{complete_visibility_polygon, sees, visibility_polygon};
use std::path::PathBuf;

const CORPUS: [&str; 7] = ["square", "pentagon", "lshape", "comb3", "comb5", "star-8", "random-simple-12"];

fn corpus(name: &str) -> SimplePolygon {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.poly"));
    parse_polygon(path).unwrap()
}

fn p(x: i64, dx: i64, y: i64, dy: i64) -> Point {
    Point::new(rat(x, dx), rat(y, dy))
}

#[test]
fn l_shape_examples() {
    let l = corpus("lshape");
    // Through the reflex corner (1,1): grazing counts as visible.
    assert!(sees(&l, &p(3, 2, 1, 2), &p(1, 2, 3, 2)).unwrap());
    assert!(sees(&l, &p(3, 2, 1, 2), &Point::from_ints(1, 1)).unwrap());
    assert!(!sees(&l, &p(7, 4, 1, 2), &p(1, 4, 7, 4)).unwrap());
    assert!(sees(&l, &p(1, 2, 1, 2), &p(1, 4, 7, 4)).unwrap());
    assert!(sees(&l, &Point::from_ints(0, 0), &Point::from_ints(0, 0)).unwrap());
    assert!(sees(&l, &Point::from_ints(3, 0), &Point::from_ints(0, 0)).is_err());
}

#[test]
fn kernel_point_sees_the_whole_l() {
    let l = corpus("lshape");
    let vp = visibility_polygon(&l, &p(1, 2, 1, 2)).unwrap();
    assert!(vp.is_full());
    assert_eq!(vp.region.area(), int(3));
    let arm = visibility_polygon(&l, &p(7, 4, 1, 2)).unwrap();
    assert!(!arm.is_full());
    assert!(arm.region.area() < int(3));
}

#[test]
fn cvp_examples() {
    let l = corpus("lshape");
    let bottom = Segment::new(Point::from_ints(0, 0), Point::from_ints(1, 0)).unwrap();
    let cvp = complete_visibility_polygon(&l, &bottom).unwrap();
    assert!(cvp.contains(&p(1, 2, 3, 2)));
    let right = Segment::new(Point::from_ints(2, 0), Point::from_ints(2, 1)).unwrap();
    let cvp = complete_visibility_polygon(&l, &right).unwrap();
    assert!(!cvp.contains(&p(1, 2, 3, 2)));
    assert!(cvp.contains(&p(1, 2, 1, 2)));
    let outside = Segment::new(Point::from_ints(0, 0), Point::from_ints(2, 2)).unwrap();
    assert!(complete_visibility_polygon(&l, &outside).is_err());
}

/// sees() against the sampling oracle on random interior pairs.
#[test]
fn sees_matches_oracle() {
    for (k, name) in CORPUS.iter().enumerate() {
        let poly = corpus(name);
        let pts = sample_polygon(&poly, 400, 7 + k as u64);
        let mut checked = 0;
        for (i, a) in pts.iter().enumerate() {
            for b in pts.iter().skip(i + 1).step_by(16) {
                assert_eq!(sees(&poly, a, b).unwrap(), oracle_sees(&poly, a, b), "{name}: {a:?} {b:?}");
                checked += 1;
            }
        }
        assert!(checked > 4000, "{checked}");
    }
}

/// VP membership against sees() on random (point, viewpoint) pairs.
#[test]
fn vp_membership_matches_sees() {
    for (k, name) in CORPUS.iter().enumerate() {
        let poly = corpus(name);
        let views = sample_polygon(&poly, 20, 100 + k as u64);
        let pts = sample_polygon(&poly, 50, 200 + k as u64);
        for q in &views {
            let vp = visibility_polygon(&poly, q).unwrap();
            for x in &pts {
                assert_eq!(vp.contains(x), sees(&poly, q, x).unwrap(), "{name}: {q:?} {x:?}");
            }
        }
    }
}

/// Every VP vertex is joined to the viewpoint inside the VP.
#[test]
fn vp_is_star_shaped() {
    for (k, name) in CORPUS.iter().enumerate() {
        let poly = corpus(name);
        for q in sample_polygon(&poly, 10, 300 + k as u64) {
            let vp = visibility_polygon(&poly, &q).unwrap();
            for v in vp.region.vertices() {
                for t in [rat(1, 3), rat(1, 2), rat(99, 100)] {
                    assert!(vp.contains(&q.lerp(v, &t)), "{name}: {q:?} -> {v:?}");
                }
            }
        }
    }
}

/// CVP(s) lies inside the VP of both endpoints, and membership agrees with
/// seeing 50 points spread along the segment.
#[test]
fn cvp_monotone_and_sampled() {
    for (k, name) in CORPUS.iter().enumerate() {
        let poly = corpus(name);
        let ends = sample_polygon(&poly, 40, 400 + k as u64);
        let xs = sample_polygon(&poly, 25, 500 + k as u64);
        for pair in ends.chunks(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if !sees(&poly, a, b).unwrap() {
                continue;
            }
            let s = Segment::new(a.clone(), b.clone()).unwrap();
            let cvp = complete_visibility_polygon(&poly, &s).unwrap();
            let va = visibility_polygon(&poly, a).unwrap();
            let vb = visibility_polygon(&poly, b).unwrap();
            for x in &xs {
                let inside = cvp.contains(x);
                if inside {
                    assert!(va.contains(x) && vb.contains(x));
                }
                let sampled = (0..50).all(|i| oracle_sees(&poly, x, &a.lerp(b, &rat(i, 49))));
                assert_eq!(inside, sampled, "{name}: {x:?} vs {a:?}-{b:?}");
            }
        }
    }
}
