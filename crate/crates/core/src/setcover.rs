//! Set cover over guarding-region visible-lists.

use crate::decomposition::ScRegion;
use crate::geometry::{Containment, Point, SimplePolygon};
use crate::guarding::{GuardingRegion, IdSet};
use crate::visibility::sees;
use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use thiserror::Error;

/// Default node-expansion budget of [`exact_cover`].
pub const DEFAULT_EXACT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetCoverError {
    #[error("visible-lists leave {} sc-region(s) uncovered, first {}", .0.len(), .0[0])]
    InfeasibleInstance(Vec<usize>),
    #[error("exact search exceeded {budget} node expansions")]
    BudgetExceeded { budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub gr_id: usize,
    pub visible_list: IdSet,
    /// Guard position if this family is chosen.
    pub guard: Point,
}

#[derive(Debug, Clone)]
pub struct SetCoverInstance {
    pub m: usize,
    pub families: Vec<Family>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Greedy,
    Exact,
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::Greedy => "greedy",
            Solver::Exact => "exact",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardSolution {
    pub chosen: Vec<usize>,
    pub guards: Vec<Point>,
    pub covered: IdSet,
    pub solver: Solver,
    pub size: usize,
}

fn uncovered(m: usize, families: &[Family]) -> Vec<usize> {
    let mut all = FixedBitSet::with_capacity(m);
    for f in families {
        all.union_with(&f.visible_list);
    }
    (0..m).filter(|&i| !all.contains(i)).collect()
}

impl SetCoverInstance {
    pub fn new(m: usize, mut families: Vec<Family>) -> Result<Self, SetCoverError> {
        for f in &mut families {
            f.visible_list.grow(m);
        }
        let missing = uncovered(m, &families);
        if !missing.is_empty() {
            return Err(SetCoverError::InfeasibleInstance(missing));
        }
        Ok(SetCoverInstance { m, families })
    }

    /// True when the chosen families cover every ground element.
    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut all = FixedBitSet::with_capacity(self.m);
        for &c in chosen {
            match self.families.iter().find(|f| f.gr_id == c) {
                Some(f) => all.union_with(&f.visible_list),
                None => return false,
            }
        }
        all.count_ones(..) == self.m
    }

    fn solution(&self, mut picks: Vec<usize>, solver: Solver) -> GuardSolution {
        picks.sort_by_key(|&i| self.families[i].gr_id);
        let mut covered = FixedBitSet::with_capacity(self.m);
        for &i in &picks {
            covered.union_with(&self.families[i].visible_list);
        }
        GuardSolution {
            chosen: picks.iter().map(|&i| self.families[i].gr_id).collect(),
            guards: picks.iter().map(|&i| self.families[i].guard.clone()).collect(),
            covered,
            solver,
            size: picks.len(),
        }
    }
}

/// Ground set = all cell ids, one family per guarding-region.
pub fn build_instance(
    cells: &[ScRegion],
    grs: &[GuardingRegion],
) -> Result<SetCoverInstance, SetCoverError> {
    let families = grs
        .iter()
        .map(|g| Family {
            gr_id: g.id,
            visible_list: g.visible_list.clone(),
            guard: g.region.centroid(),
        })
        .collect();
    SetCoverInstance::new(cells.len(), families)
}

/// Greedy picks in the given family order; ties keep the earlier one.
fn greedy_in_order(inst: &SetCoverInstance, order: &[usize]) -> Vec<usize> {
    let mut covered = FixedBitSet::with_capacity(inst.m);
    let mut picks = Vec::new();
    while covered.count_ones(..) < inst.m {
        let mut best = None;
        let mut best_gain = 0;
        for &i in order {
            let gain = inst.families[i].visible_list.difference_count(&covered);
            if gain > best_gain {
                best_gain = gain;
                best = Some(i);
            }
        }
        let i = best.expect("instance is feasible");
        covered.union_with(&inst.families[i].visible_list);
        picks.push(i);
    }
    picks
}

/// Standard greedy, ties broken by smaller gr id.
pub fn greedy_cover(inst: &SetCoverInstance) -> GuardSolution {
    let mut order: Vec<usize> = (0..inst.families.len()).collect();
    order.sort_by_key(|&i| inst.families[i].gr_id);
    inst.solution(greedy_in_order(inst, &order), Solver::Greedy)
}

/// Greedy with ties broken by a seeded random order.
pub fn greedy_cover_shuffled(inst: &SetCoverInstance, seed: u64) -> GuardSolution {
    use rand::seq::SliceRandom;
    let mut order: Vec<usize> = (0..inst.families.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    inst.solution(greedy_in_order(inst, &order), Solver::Greedy)
}

/// Families whose visible-list is not a subset of another's. Among equal
/// lists the smallest gr id survives.
fn undominated(inst: &SetCoverInstance) -> Vec<usize> {
    let mut order: Vec<usize> = (0..inst.families.len()).collect();
    order.sort_by(|&a, &b| {
        let (fa, fb) = (&inst.families[a], &inst.families[b]);
        fb.visible_list
            .count_ones(..)
            .cmp(&fa.visible_list.count_ones(..))
            .then(fa.gr_id.cmp(&fb.gr_id))
    });
    let mut kept: Vec<usize> = Vec::new();
    for i in order {
        let vl = &inst.families[i].visible_list;
        if !kept.iter().any(|&k| vl.is_subset(&inst.families[k].visible_list)) {
            kept.push(i);
        }
    }
    kept
}

struct Search<'a> {
    inst: &'a SetCoverInstance,
    fams: Vec<usize>,
    /// For each element, the kept families containing it.
    covering: Vec<Vec<usize>>,
    max_size: usize,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn dfs(&mut self, covered: &FixedBitSet, picks: &mut Vec<usize>) -> Result<(), SetCoverError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SetCoverError::BudgetExceeded { budget: self.budget });
        }
        let left = self.inst.m - covered.count_ones(..);
        if left == 0 {
            if picks.len() < self.best.len() {
                self.best = picks.clone();
            }
            return Ok(());
        }
        if picks.len() + left.div_ceil(self.max_size) >= self.best.len() {
            return Ok(());
        }
        // Branch on the uncovered element with the fewest options.
        let e = (0..self.inst.m)
            .filter(|&e| !covered.contains(e))
            .min_by_key(|&e| self.covering[e].len())
            .expect("something is uncovered");
        let mut options: Vec<(usize, usize)> = self.covering[e]
            .iter()
            .map(|&f| (self.inst.families[f].visible_list.difference_count(covered), f))
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, f) in options {
            let mut next = covered.clone();
            next.union_with(&self.inst.families[f].visible_list);
            picks.push(f);
            self.dfs(&next, picks)?;
            picks.pop();
            if picks.len() + 1 >= self.best.len() {
                break;
            }
        }
        Ok(())
    }
}

/// Minimum-cardinality cover by branch and bound, seeded with the greedy
/// solution. Fails once more than `budget` nodes have been expanded.
pub fn exact_cover(inst: &SetCoverInstance, budget: u64) -> Result<GuardSolution, SetCoverError> {
    let fams = undominated(inst);
    let mut covering = vec![Vec::new(); inst.m];
    for &f in &fams {
        for e in inst.families[f].visible_list.ones() {
            covering[e].push(f);
        }
    }
    let max_size = fams
        .iter()
        .map(|&f| inst.families[f].visible_list.count_ones(..))
        .max()
        .unwrap_or(1)
        .max(1);
    let mut order = fams.clone();
    order.sort_by_key(|&i| inst.families[i].gr_id);
    let best = greedy_in_order(inst, &order);
    let mut search = Search {
        inst,
        fams,
        covering,
        max_size,
        best,
        nodes: 0,
        budget,
    };
    debug_assert!(!search.fams.is_empty() || inst.m == 0);
    search.dfs(&FixedBitSet::with_capacity(inst.m), &mut Vec::new())?;
    Ok(inst.solution(search.best, Solver::Exact))
}

/// H(m) = 1 + 1/2 + ... + 1/m.
pub fn harmonic(m: usize) -> f64 {
    (1..=m).map(|i| 1.0 / i as f64).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub samples: usize,
    pub covered: usize,
    pub fraction: f64,
    pub uncovered: Vec<Point>,
}

/// `count` seeded uniform points strictly inside `poly`, by rejection in
/// the bounding box on a 2^-32 lattice.
pub fn sample_polygon(poly: &SimplePolygon, count: usize, seed: u64) -> Vec<Point> {
    let (x0, y0, x1, y1) = poly.bbox();
    let (w, h) = (&x1 - &x0, &y1 - &y0);
    let scale = BigInt::from(1u64 << 32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u = BigRational::new(BigInt::from(rng.gen::<u32>()), scale.clone());
        let v = BigRational::new(BigInt::from(rng.gen::<u32>()), scale.clone());
        let p = Point::new(&x0 + &w * u, &y0 + &h * v);
        if poly.locate(&p) == Containment::Inside {
            out.push(p);
        }
    }
    out
}

/// Fraction of `samples` seeded interior points seen by at least one guard.
pub fn verify_cover(
    poly: &SimplePolygon,
    guards: &[Point],
    samples: usize,
    seed: u64,
) -> CoverageReport {
    let pts = sample_polygon(poly, samples, seed);
    let seen: Vec<bool> = pts
        .par_iter()
        .map(|p| guards.iter().any(|g| sees(poly, g, p).unwrap_or(false)))
        .collect();
    let uncovered: Vec<Point> = pts
        .iter()
        .zip(&seen)
        .filter(|(_, s)| !**s)
        .map(|(p, _)| p.clone())
        .collect();
    let covered = samples - uncovered.len();
    CoverageReport {
        samples,
        covered,
        fraction: if samples == 0 { 1.0 } else { covered as f64 / samples as f64 },
        uncovered,
    }
}
