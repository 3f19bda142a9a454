use gridguard::decomposition::{
    build_sc_regions, reflex_extensions, refine_once, strategy_lines, total_area, vertex_lines, DecompositionConfig,
    DecompositionError, Strategy,
};
use gridguard::geometry::scalar::int;
use gridguard::geometry::{ConvexRegion, Line, Point, SimplePolygon};
use gridguard::io::parse_polygon;
use gridguard::oracle::oracle_arrangement_count;
use std::path::PathBuf;

const STRATEGIES: [Strategy; 4] = [Strategy::Paper1, Strategy::Paper2, Strategy::Trapezoid, Strategy::Grid];

fn corpus(name: &str) -> SimplePolygon {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.poly"));
    parse_polygon(path).unwrap()
}

fn cells(poly: &SimplePolygon, cfg: &DecompositionConfig) -> Vec<ConvexRegion> {
    build_sc_regions(poly, cfg).unwrap().into_iter().map(|c| c.cell).collect()
}

#[test]
fn square_lines_and_cells() {
    let sq = corpus("square");
    assert_eq!(vertex_lines(&sq).len(), 6);
    assert_eq!(cells(&sq, &DecompositionConfig::new(Strategy::Paper1)).len(), 4);
    assert_eq!(cells(&sq, &DecompositionConfig::new(Strategy::Trapezoid)).len(), 1);
}

#[test]
fn pentagon_cell_count_matches_oracle() {
    let p = corpus("pentagon");
    let lines = vertex_lines(&p);
    let (expected, area) = oracle_arrangement_count(&lines, &p);
    assert_eq!(area, p.area());
    let got = cells(&p, &DecompositionConfig::new(Strategy::Paper1));
    assert_eq!(got.len(), expected);
    assert_eq!(got.len(), 11);
}

#[test]
fn l_shape_trapezoids() {
    let l = corpus("lshape");
    let cs = cells(&l, &DecompositionConfig::new(Strategy::Trapezoid));
    assert_eq!(total_area(&cs), int(3));
    assert!(cs.len() >= 2);
}

/// Every strategy tiles every corpus polygon exactly with convex cells.
#[test]
fn partition_is_exact() {
    for name in ["square", "pentagon", "lshape", "comb3", "comb5", "star-8", "random-simple-12"] {
        let poly = corpus(name);
        for s in STRATEGIES {
            let cs = cells(&poly, &DecompositionConfig::new(s));
            assert_eq!(total_area(&cs), poly.area(), "{name} {s}");
            for c in &cs {
                assert!(ConvexRegion::new(c.vertices().to_vec()).is_ok(), "{name} {s}");
            }
        }
    }
}

/// Cell edges lie on lines of the final line set.
#[test]
fn cell_edges_lie_on_strategy_lines() {
    for name in ["pentagon", "lshape", "comb3"] {
        let poly = corpus(name);
        for s in [Strategy::Paper1, Strategy::Paper2, Strategy::Grid] {
            let cfg = DecompositionConfig::new(s);
            let lines = strategy_lines(&poly, &cfg).unwrap();
            for c in cells(&poly, &cfg) {
                for l in c.edge_lines() {
                    assert!(lines.contains(&l), "{name} {s}: {l:?}");
                }
            }
        }
    }
}

#[test]
fn refinement_nests() {
    let l = corpus("lshape");
    for s in [Strategy::Paper1, Strategy::Paper2] {
        let coarse = cells(&l, &DecompositionConfig::new(s));
        let fine = cells(&l, &DecompositionConfig::new(s).with_k(1));
        assert!(fine.len() > coarse.len());
        assert_eq!(total_area(&fine), int(3));
        for f in &fine {
            let parents = coarse.iter().filter(|c| c.contains_region(f)).count();
            assert_eq!(parents, 1, "{s}: {f:?}");
        }
    }
}

#[test]
fn refine_keeps_the_input_lines() {
    let l = corpus("lshape");
    let base = vertex_lines(&l);
    let once = refine_once(&base, &l, false, 10_000).unwrap();
    assert!(base.iter().all(|x| once.contains(x)));
    let with_medians = refine_once(&base, &l, true, 10_000).unwrap();
    assert!(once.iter().all(|x| with_medians.contains(x)));
}

#[test]
fn triangle_rule_gives_six_pieces() {
    let t = SimplePolygon::from_ints(&[(0, 0), (6, 0), (0, 6)]).unwrap();
    let lines = refine_once(&vertex_lines(&t), &t, true, 100).unwrap();
    let cs = gridguard::geometry::arrangement_faces(&lines, &t).unwrap();
    assert_eq!(cs.len(), 6);
    assert!(cs.iter().all(|c| c.area() == int(3)));
    let centroid = Point::new(int(2), int(2));
    assert!(cs.iter().all(|c| c.vertices().contains(&centroid)));
}

#[test]
fn grid_includes_reflex_extensions() {
    for name in ["lshape", "comb3", "star-8"] {
        let poly = corpus(name);
        let lines = strategy_lines(&poly, &DecompositionConfig::new(Strategy::Grid)).unwrap();
        for (a, b) in reflex_extensions(&poly) {
            assert!(lines.contains(&Line::through(&a, &b).unwrap()), "{name}");
        }
    }
}

#[test]
fn limits_are_enforced() {
    let l = corpus("lshape");
    let err = build_sc_regions(&l, &DecompositionConfig::new(Strategy::Paper1).with_k(4)).unwrap_err();
    assert!(matches!(err, DecompositionError::InvalidConfig(_)));
    let mut cfg = DecompositionConfig::new(Strategy::Paper1).with_k(1);
    cfg.max_cells = 10;
    let err = build_sc_regions(&l, &cfg).unwrap_err();
    assert_eq!(err, DecompositionError::CellBudgetExceeded { limit: 10 });
}

#[test]
fn representatives_are_interior() {
    let poly = corpus("random-simple-12");
    for c in build_sc_regions(&poly, &DecompositionConfig::new(Strategy::Paper1)).unwrap() {
        assert!(c.cell.contains_strictly(&c.representative));
        assert!(poly.contains(&c.representative));
    }
}
