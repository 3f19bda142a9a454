//! Decomposition of a polygon into spanning convex cells.

use crate::geometry::{
    arrangement_faces_capped, ConvexRegion, GeometryError, Line, Point, Scalar, SimplePolygon,
};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const DEFAULT_MAX_CELLS: usize = 50_000;
pub const MAX_REFINEMENTS: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Arrangement of all vertex-pair lines, refined `k` times.
    Paper1,
    /// As `Paper1`, also adding the medians of every triangular cell.
    Paper2,
    /// Vertical trapezoids split along reflex-vertex edge extensions.
    Trapezoid,
    /// Vertex-pair lines plus an axis-aligned grid over the bounding box.
    Grid,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Paper1 => "paper1",
            Strategy::Paper2 => "paper2",
            Strategy::Trapezoid => "trapezoid",
            Strategy::Grid => "grid",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "paper1" => Ok(Strategy::Paper1),
            "paper2" => Ok(Strategy::Paper2),
            "trapezoid" => Ok(Strategy::Trapezoid),
            "grid" => Ok(Strategy::Grid),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionConfig {
    pub strategy: Strategy,
    pub k: u32,
    pub grid_resolution: u32,
    pub max_cells: usize,
}

impl Default for DecompositionConfig {
    fn default() -> Self {
        DecompositionConfig {
            strategy: Strategy::Trapezoid,
            k: 0,
            grid_resolution: 4,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

impl DecompositionConfig {
    pub fn new(strategy: Strategy) -> Self {
        DecompositionConfig {
            strategy,
            ..Default::default()
        }
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = k;
        self
    }

    pub fn validate(&self) -> Result<(), DecompositionError> {
        if self.k > MAX_REFINEMENTS {
            return Err(DecompositionError::InvalidConfig(format!(
                "k = {} exceeds the maximum of {MAX_REFINEMENTS}",
                self.k
            )));
        }
        if self.grid_resolution == 0 {
            return Err(DecompositionError::InvalidConfig("grid resolution must be positive".into()));
        }
        if self.max_cells == 0 {
            return Err(DecompositionError::InvalidConfig("max_cells must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("cell budget of {limit} exceeded")]
    CellBudgetExceeded { limit: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(GeometryError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl From<GeometryError> for DecompositionError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::CellBudgetExceeded { limit } => DecompositionError::CellBudgetExceeded { limit },
            other => DecompositionError::DegenerateInput(other),
        }
    }
}

/// One cell of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScRegion {
    pub id: usize,
    pub cell: ConvexRegion,
    /// Vertex centroid of the cell; strictly interior.
    pub representative: Point,
}

impl ScRegion {
    pub fn new(id: usize, cell: ConvexRegion) -> Self {
        let representative = cell.centroid();
        ScRegion {
            id,
            cell,
            representative,
        }
    }
}

fn insert_line(lines: &mut BTreeSet<Line>, a: &Point, b: &Point) {
    if a != b {
        lines.insert(Line::through(a, b).expect("distinct points"));
    }
}

/// Deduplicated lines through every pair of polygon vertices, sorted.
pub fn vertex_lines(poly: &SimplePolygon) -> Vec<Line> {
    let vs = poly.vertices();
    let mut out = BTreeSet::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            insert_line(&mut out, &vs[i], &vs[j]);
        }
    }
    out.into_iter().collect()
}

/// One refinement round: the input lines plus the lines through every pair
/// of vertices of every current cell, and with `triangle_rule` the three
/// medians of every triangular cell.
pub fn refine_once(
    lines: &[Line],
    poly: &SimplePolygon,
    triangle_rule: bool,
    max_cells: usize,
) -> Result<Vec<Line>, DecompositionError> {
    let cells = arrangement_faces_capped(lines, poly, max_cells)?;
    let mut out: BTreeSet<Line> = lines.iter().cloned().collect();
    for cell in &cells {
        let vs = cell.vertices();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                insert_line(&mut out, &vs[i], &vs[j]);
            }
        }
        if triangle_rule && vs.len() == 3 {
            for i in 0..3 {
                let mid = vs[(i + 1) % 3].midpoint(&vs[(i + 2) % 3]);
                insert_line(&mut out, &vs[i], &mid);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Final line set of the arrangement-based strategies.
pub fn strategy_lines(poly: &SimplePolygon, cfg: &DecompositionConfig) -> Result<Vec<Line>, DecompositionError> {
    cfg.validate()?;
    match cfg.strategy {
        Strategy::Paper1 | Strategy::Paper2 => {
            let triangle_rule = cfg.strategy == Strategy::Paper2;
            let mut lines = vertex_lines(poly);
            for _ in 0..cfg.k {
                lines = refine_once(&lines, poly, triangle_rule, cfg.max_cells)?;
            }
            Ok(lines)
        }
        Strategy::Grid => Ok(grid_lines(poly, cfg.grid_resolution)),
        Strategy::Trapezoid => Err(DecompositionError::InvalidConfig(
            "the trapezoid strategy is not line based".into(),
        )),
    }
}

fn grid_lines(poly: &SimplePolygon, res: u32) -> Vec<Line> {
    let mut out: BTreeSet<Line> = vertex_lines(poly).into_iter().collect();
    let (x0, y0, x1, y1) = poly.bbox();
    let r = Scalar::from_integer(i64::from(res).into());
    for i in 1..res {
        let t = Scalar::from_integer(i64::from(i).into()) / &r;
        out.insert(Line::vertical(&x0 + (&x1 - &x0) * &t));
        out.insert(Line::horizontal(&y0 + (&y1 - &y0) * &t));
    }
    out.into_iter().collect()
}

/// Convex cells tiling the polygon, numbered in sorted order.
pub fn build_sc_regions(poly: &SimplePolygon, cfg: &DecompositionConfig) -> Result<Vec<ScRegion>, DecompositionError> {
    cfg.validate()?;
    let cells = match cfg.strategy {
        Strategy::Trapezoid => {
            let cells = trapezoid_cells(poly);
            if cells.len() > cfg.max_cells {
                return Err(DecompositionError::CellBudgetExceeded { limit: cfg.max_cells });
            }
            cells
        }
        _ => {
            let lines = strategy_lines(poly, cfg)?;
            arrangement_faces_capped(&lines, poly, cfg.max_cells)?
        }
    };
    Ok(cells.into_iter().enumerate().map(|(i, c)| ScRegion::new(i, c)).collect())
}

fn y_on_edge(u: &Point, v: &Point, x: &Scalar) -> Scalar {
    u.y() + (x - u.x()) * (v.y() - u.y()) / (v.x() - u.x())
}

/// Vertical trapezoidal decomposition, then every trapezoid crossed by a
/// reflex-vertex edge extension is split along that extension's line.
pub fn trapezoid_cells(poly: &SimplePolygon) -> Vec<ConvexRegion> {
    let vs = poly.vertices();
    let n = vs.len();
    let xs: Vec<Scalar> = vs.iter().map(|v| v.x().clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let two = Scalar::from_integer(2.into());

    // (bottom edge, top edge) -> (x where the run started, x where it ends)
    let mut open: HashMap<(usize, usize), (Scalar, Scalar)> = HashMap::new();
    let mut finished: Vec<((usize, usize), Scalar, Scalar)> = Vec::new();
    for w in xs.windows(2) {
        let (x0, x1) = (&w[0], &w[1]);
        let xm = (x0 + x1) / &two;
        let mut crossing: Vec<(Scalar, usize)> = (0..n)
            .filter_map(|i| {
                let u = &vs[i];
                let v = &vs[(i + 1) % n];
                let (lo, hi) = if u.x() < v.x() { (u.x(), v.x()) } else { (v.x(), u.x()) };
                (lo <= x0 && hi >= x1).then(|| (y_on_edge(u, v, &xm), i))
            })
            .collect();
        crossing.sort();
        let pairs: Vec<(usize, usize)> = crossing.chunks(2).map(|c| (c[0].1, c[1].1)).collect();
        let mut next_open = HashMap::new();
        for key in pairs {
            let start = match open.remove(&key) {
                Some((start, _)) => start,
                None => x0.clone(),
            };
            next_open.insert(key, (start, x1.clone()));
        }
        finished.extend(open.drain().map(|(k, (s, e))| (k, s, e)));
        open = next_open;
    }
    finished.extend(open.drain().map(|(k, (s, e))| (k, s, e)));

    let mut cells: Vec<ConvexRegion> = finished
        .into_iter()
        .map(|((bot, top), xs0, xs1)| {
            let (bu, bv) = (&vs[bot], &vs[(bot + 1) % n]);
            let (tu, tv) = (&vs[top], &vs[(top + 1) % n]);
            ConvexRegion::new(vec![
                Point::new(xs0.clone(), y_on_edge(bu, bv, &xs0)),
                Point::new(xs1.clone(), y_on_edge(bu, bv, &xs1)),
                Point::new(xs1.clone(), y_on_edge(tu, tv, &xs1)),
                Point::new(xs0.clone(), y_on_edge(tu, tv, &xs0)),
            ])
            .expect("slab trapezoid has positive area")
        })
        .collect();

    for (r, hit) in reflex_extensions(poly) {
        let line = Line::through(&r, &hit).expect("distinct points");
        let mut next = Vec::with_capacity(cells.len() + 2);
        for c in cells {
            if c.segment_meets_interior(&r, &hit) {
                let (a, b) = c.split(&line);
                next.extend(a);
                next.extend(b);
            } else {
                next.push(c);
            }
        }
        cells = next;
    }
    crate::geometry::sort_faces(cells)
}

/// Chords extending each edge incident to a reflex vertex beyond that vertex
/// up to the first boundary point.
pub fn reflex_extensions(poly: &SimplePolygon) -> Vec<(Point, Point)> {
    let vs = poly.vertices();
    let n = vs.len();
    let mut out = Vec::new();
    for i in poly.reflex_indices() {
        let r = &vs[i];
        for other in [&vs[(i + n - 1) % n], &vs[(i + 1) % n]] {
            let d = r.sub(other);
            if let Some(hit) = first_boundary_hit(poly, r, &d) {
                out.push((r.clone(), hit));
            }
        }
    }
    out
}

fn first_boundary_hit(poly: &SimplePolygon, q: &Point, m: &(Scalar, Scalar)) -> Option<Point> {
    let cross = |a: &(Scalar, Scalar), b: &(Scalar, Scalar)| &a.0 * &b.1 - &a.1 * &b.0;
    let mut best: Option<Scalar> = None;
    for (u, v) in poly.edges() {
        let w = v.sub(u);
        let denom = cross(m, &w);
        if denom.is_zero() {
            continue;
        }
        let uq = u.sub(q);
        let t = cross(&uq, &w) / &denom;
        if !t.is_positive() {
            continue;
        }
        let s = cross(&uq, m) / &denom;
        if s.is_negative() || s > Scalar::one() {
            continue;
        }
        if best.as_ref().map_or(true, |b| t < *b) {
            best = Some(t);
        }
    }
    best.map(|t| q.offset(&(&m.0 * &t), &(&m.1 * &t)))
}

/// Sum of cell areas.
///
/// Fine arrangements give millions of areas over many distinct
/// denominators, and a running rational sum redoes an ever larger gcd at
/// every step. Summing pairwise in Z-order keeps each partial sum the area
/// of a compact patch, whose denominator only involves the patch boundary.
pub fn total_area<'a>(cells: impl IntoIterator<Item = &'a ConvexRegion>) -> Scalar {
    let cells: Vec<&ConvexRegion> = cells.into_iter().collect();
    let boxes: Vec<(f64, f64)> = cells
        .iter()
        .map(|c| {
            let (x0, y0, x1, y1) = c.approx_bbox();
            ((x0 + x1) / 2.0, (y0 + y1) / 2.0)
        })
        .collect();
    let (lo_x, hi_x) = boxes.iter().fold((f64::MAX, f64::MIN), |(l, h), b| (l.min(b.0), h.max(b.0)));
    let (lo_y, hi_y) = boxes.iter().fold((f64::MAX, f64::MIN), |(l, h), b| (l.min(b.1), h.max(b.1)));
    let cell_key = |(x, y): (f64, f64)| {
        let u = ((x - lo_x) / (hi_x - lo_x).max(f64::MIN_POSITIVE) * 65535.0) as u32;
        let v = ((y - lo_y) / (hi_y - lo_y).max(f64::MIN_POSITIVE) * 65535.0) as u32;
        morton(u, v)
    };
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by_key(|&i| cell_key(boxes[i]));
    let mut parts: Vec<Scalar> = order.iter().map(|&i| cells[i].twice_area()).collect();
    while parts.len() > 1 {
        parts = parts.chunks(2).map(|c| c.iter().sum()).collect();
    }
    parts.pop().unwrap_or_else(Scalar::zero) / Scalar::from_integer(2.into())
}

/// Interleaves the low 16 bits of `u` and `v`.
fn morton(u: u32, v: u32) -> u64 {
    (0..16).fold(0u64, |z, k| {
        z | u64::from((u >> k) & 1) << (2 * k) | u64::from((v >> k) & 1) << (2 * k + 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::scalar::{int, rat};
    use crate::geometry::{arrangement_faces, Containment};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn square() -> SimplePolygon {
        SimplePolygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    fn l_shape() -> SimplePolygon {
        SimplePolygon::from_ints(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn vertex_line_counts() {
        assert_eq!(vertex_lines(&square()).len(), 6);
        let t = SimplePolygon::from_ints(&[(0, 0), (4, 0), (0, 3)]).unwrap();
        assert_eq!(vertex_lines(&t).len(), 3);
    }

    #[test]
    fn square_paper1_k0() {
        let cells = build_sc_regions(&square(), &DecompositionConfig::new(Strategy::Paper1)).unwrap();
        assert_eq!(cells.len(), 4);
        assert!(cells.iter().all(|c| c.cell.len() == 3));
        assert!(cells.iter().enumerate().all(|(i, c)| c.id == i && c.cell.contains_strictly(&c.representative)));
    }

    #[test]
    fn medians_split_triangle_into_six() {
        let t = SimplePolygon::from_ints(&[(0, 0), (6, 0), (0, 6)]).unwrap();
        let lines = refine_once(&t.edge_lines(), &t, true, 1000).unwrap();
        assert_eq!(lines.len(), 6);
        let faces = arrangement_faces(&lines, &t).unwrap();
        assert_eq!(faces.len(), 6);
        let centroid = p(2, 2);
        assert!(faces.iter().all(|f| f.len() == 3 && f.vertices().contains(&centroid)));
    }

    #[test]
    fn l_shape_trapezoids() {
        let l = l_shape();
        let cells = trapezoid_cells(&l);
        assert_eq!(cells.len(), 3);
        assert_eq!(total_area(&cells), int(3));
        let expected = [
            ConvexRegion::rectangle(int(0), int(0), int(1), int(1)).unwrap(),
            ConvexRegion::rectangle(int(0), int(1), int(1), int(2)).unwrap(),
            ConvexRegion::rectangle(int(1), int(0), int(2), int(1)).unwrap(),
        ];
        for e in &expected {
            assert!(cells.iter().any(|c| c.contains_region(e) && e.contains_region(c)));
        }
    }

    #[test]
    fn trapezoids_on_slanted_polygon() {
        // A notch polygon with slanted edges and two reflex vertices.
        let poly = SimplePolygon::from_ints(&[(0, 0), (6, 0), (6, 4), (4, 4), (3, 1), (2, 4), (0, 4)]).unwrap();
        let cells = trapezoid_cells(&poly);
        assert_eq!(total_area(&cells), poly.area());
        for c in &cells {
            assert_ne!(poly.locate(&c.centroid()), Containment::Outside);
            assert!(poly.contains_convex(c));
        }
    }

    #[test]
    fn grid_contains_vertex_lines() {
        let l = l_shape();
        let mut cfg = DecompositionConfig::new(Strategy::Grid);
        cfg.grid_resolution = 4;
        let lines = strategy_lines(&l, &cfg).unwrap();
        for vl in vertex_lines(&l) {
            assert!(lines.contains(&vl));
        }
        assert!(lines.contains(&Line::vertical(rat(1, 2))));
        let cells = build_sc_regions(&l, &cfg).unwrap();
        assert_eq!(total_area(cells.iter().map(|c| &c.cell)), int(3));
    }

    #[test]
    fn config_limits() {
        let cfg = DecompositionConfig::new(Strategy::Paper1).with_k(4);
        assert!(matches!(build_sc_regions(&square(), &cfg), Err(DecompositionError::InvalidConfig(_))));
        let mut cfg = DecompositionConfig::new(Strategy::Paper1);
        cfg.max_cells = 2;
        assert_eq!(
            build_sc_regions(&square(), &cfg),
            Err(DecompositionError::CellBudgetExceeded { limit: 2 })
        );
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in [Strategy::Paper1, Strategy::Paper2, Strategy::Trapezoid, Strategy::Grid] {
            assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
        }
        assert!("nope".parse::<Strategy>().is_err());
    }
}
