use fixedbitset::FixedBitSet;
use gridguard::geometry::scalar::rat;
use gridguard::geometry::Point;
use gridguard::io::parse_polygon_str;
use gridguard::setcover::{
    exact_cover, greedy_cover, greedy_cover_shuffled, harmonic, verify_cover, Family, SetCoverError,
    SetCoverInstance,
};
use proptest::prelude::*;

fn instance(m: usize, sets: &[Vec<usize>]) -> Result<SetCoverInstance, SetCoverError> {
    let families = sets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut bits = FixedBitSet::with_capacity(m);
            for &e in s {
                bits.insert(e);
            }
            Family {
                gr_id: i,
                visible_list: bits,
                guard: Point::from_ints(i as i64, 0),
            }
        })
        .collect();
    SetCoverInstance::new(m, families)
}

/// Union of the chosen families, recomputed from the raw sets.
fn covers(m: usize, sets: &[Vec<usize>], chosen: &[usize]) -> bool {
    let mut hit = vec![false; m];
    for &c in chosen {
        for &e in &sets[c] {
            hit[e] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

#[test]
fn one_family_covering_everything() {
    let sets = vec![vec![0], vec![0, 1, 2], vec![2]];
    let inst = instance(3, &sets).unwrap();
    assert_eq!(greedy_cover(&inst).chosen, vec![1]);
    assert_eq!(exact_cover(&inst, 1000).unwrap().size, 1);
}

#[test]
fn greedy_can_be_beaten() {
    // Greedy grabs the four-element set first and then needs both halves.
    let sets = vec![vec![0, 1, 3, 4], vec![0, 1, 2], vec![3, 4, 5]];
    let inst = instance(6, &sets).unwrap();
    let g = greedy_cover(&inst);
    let e = exact_cover(&inst, 10_000).unwrap();
    assert_eq!(g.size, 3);
    assert_eq!(e.size, 2);
    assert!(covers(6, &sets, &e.chosen));
}

#[test]
fn uncoverable_element_is_rejected() {
    assert!(instance(3, &[vec![0], vec![1]]).is_err());
}

#[test]
fn budget_is_explicit() {
    let sets: Vec<Vec<usize>> = (0..20).map(|i| vec![i, (i + 1) % 20, (i + 7) % 20]).collect();
    let inst = instance(20, &sets).unwrap();
    assert!(matches!(exact_cover(&inst, 3), Err(SetCoverError::BudgetExceeded { .. })));
}

#[test]
fn harmonic_numbers() {
    assert_eq!(harmonic(1), 1.0);
    assert!((harmonic(3) - 11.0 / 6.0).abs() < 1e-12);
}

#[test]
fn reflex_corner_guards_the_l() {
    let l = parse_polygon_str("0 0\n2 0\n2 1\n1 1\n1 2\n0 2\n").unwrap();
    let guards = [Point::from_ints(1, 1)];
    assert_eq!(verify_cover(&l, &guards, 500, 3).fraction, 1.0);
    let one = [Point::new(rat(7, 4), rat(1, 2))];
    let r = verify_cover(&l, &one, 500, 3);
    assert!(r.fraction < 1.0);
    assert_eq!(r.covered + r.uncovered.len(), 500);
}

fn random_instance() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (2usize..14).prop_flat_map(|m| {
        let set = proptest::collection::vec(0..m, 1..=m.min(6));
        (Just(m), proptest::collection::vec(set, 1..12))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn greedy_within_harmonic_bound((m, mut sets) in random_instance()) {
        // Singletons keep every instance feasible.
        sets.extend((0..m).map(|e| vec![e]));
        let inst = instance(m, &sets).unwrap();
        let g = greedy_cover(&inst);
        let e = exact_cover(&inst, 1_000_000).unwrap();
        prop_assert!(covers(m, &sets, &g.chosen));
        prop_assert!(covers(m, &sets, &e.chosen));
        prop_assert!(e.size <= g.size);
        prop_assert!(g.size as f64 <= harmonic(m).ceil() * e.size as f64);
        for seed in 0..100 {
            let s = greedy_cover_shuffled(&inst, seed);
            prop_assert!(covers(m, &sets, &s.chosen));
            prop_assert!(e.size <= s.size);
        }
    }
}
