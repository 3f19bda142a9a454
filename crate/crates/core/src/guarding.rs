//! Temp-sub-regions and guarding-regions.
//!
//! For a source cell S, an edge e of S and a target cell T, the temp-sub-region
//! is the part of S from which all of T is visible by looking across e. The
//! guarding-regions of S are the faces of the overlay of all its
//! temp-sub-regions; each carries the set of cells it sees completely.

use crate::decomposition::ScRegion;
use crate::geometry::{
    arrangement_faces, clip_convex_by_halfplane, orientation, ConvexRegion, GeometryError,
    HalfLine, Line, Orientation, Point, Segment, SimplePolygon,
};
use crate::visibility::{
    complete_visibility_polygon, sees_unchecked, visibility_polygon, VisibilityError,
    VisibilityPolygon,
};
use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

/// Set of cell ids.
pub type IdSet = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuardingError {
    #[error("segment {0} - {1} is not an edge of source cell {2}")]
    EdgeNotOnSource(Point, Point, usize),
    #[error("temp-sub-region belongs to cell {found}, expected cell {expected}")]
    TsrSourceMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Visibility(#[from] VisibilityError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TempSubRegion {
    pub source_id: usize,
    pub target_id: usize,
    pub via_edge: Segment,
    pub region: ConvexRegion,
    pub shl: HalfLine,
    pub ehl: HalfLine,
    full_cell: bool,
}

impl TempSubRegion {
    /// The region is the entire source cell.
    pub fn covers_source(&self) -> bool {
        self.full_cell
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardingRegion {
    pub id: usize,
    pub source_id: usize,
    pub region: ConvexRegion,
    pub visible_list: IdSet,
}

impl GuardingRegion {
    pub fn visible_ids(&self) -> Vec<usize> {
        self.visible_list.ones().collect()
    }
}

fn edge_half_lines(edge: &Segment) -> (HalfLine, HalfLine) {
    (
        HalfLine::away_from(&edge.a, &edge.b).expect("edge endpoints differ"),
        HalfLine::away_from(&edge.b, &edge.a).expect("edge endpoints differ"),
    )
}

fn full_tsr(source: &ScRegion, target_id: usize, edge: &Segment) -> TempSubRegion {
    let (shl, ehl) = edge_half_lines(edge);
    TempSubRegion {
        source_id: source.id,
        target_id,
        via_edge: edge.clone(),
        region: source.cell.clone(),
        shl,
        ehl,
        full_cell: true,
    }
}

fn dist2(a: &Point, b: &Point) -> crate::geometry::Scalar {
    let d = a.sub(b);
    &d.0 * &d.0 + &d.1 * &d.1
}

/// `|p t| > |p b|`, decided in floats when clearly separated.
fn farther(p: &Point, t: &Point, b: &Point) -> bool {
    let f = |q: &Point| {
        let ((px, py), (qx, qy)) = (p.approx(), q.approx());
        (qx - px).powi(2) + (qy - py).powi(2)
    };
    let (dt, db) = (f(t), f(b));
    if (dt - db).abs() > 1e-9 * (dt + db) {
        return dt > db;
    }
    dist2(p, t) > dist2(p, b)
}

/// Vertex `t` of `target` such that the line `p t` supports `target` with
/// the whole target on `other`'s closed side. The farthest such vertex wins
/// when several are collinear with `p`.
fn tangent_vertex<'a>(p: &Point, other: &Point, target: &'a ConvexRegion) -> Option<&'a Point> {
    let mut best: Option<&Point> = None;
    for t in target.vertices() {
        if t == p {
            continue;
        }
        let side = orientation(p, t, other);
        if side == Orientation::Collinear {
            continue;
        }
        let supports = target.vertices().iter().all(|u| {
            let o = orientation(p, t, u);
            o == Orientation::Collinear || o == side
        });
        if supports && best.map_or(true, |b| farther(p, t, b)) {
            best = Some(t);
        }
    }
    best
}

/// Every target vertex lies strictly across the edge's line from the
/// source, or on the edge itself.
fn target_beyond_edge(edge: &Segment, source: &ScRegion, target: &ConvexRegion) -> bool {
    let line = Line::through(&edge.a, &edge.b).expect("edge endpoints differ");
    let inner = line.side_of(&source.representative).expect("representative is interior");
    target
        .vertices()
        .iter()
        .all(|t| line.side_of(t) == Some(inner.opposite()) || edge.contains(t))
}

/// Temp-sub-region for a target already known to be inside CVP(edge).
///
/// With `full_pair` (every source vertex sees every target vertex, so the
/// convex hull of both cells lies in the polygon) the whole source qualifies.
/// Otherwise the source is clipped by the two tangent lines from the edge
/// endpoints; the clip is kept when the target lies beyond the edge, where
/// every sightline from the clipped region crosses the edge, or when its
/// vertices provably see the whole target.
fn tsr_within_cvp(
    poly: &SimplePolygon,
    edge: &Segment,
    source: &ScRegion,
    target: &ScRegion,
    full_pair: bool,
) -> Option<TempSubRegion> {
    if full_pair {
        return Some(full_tsr(source, target.id, edge));
    }
    let (a, b) = (&edge.a, &edge.b);
    let ta = tangent_vertex(a, b, &target.cell);
    let tb = tangent_vertex(b, a, &target.cell);
    let mut region = source.cell.clone();
    let mut full_cell = true;
    for (p, t, keep) in [(a, ta, b), (b, tb, a)] {
        if let Some(t) = t {
            let l = Line::through(p, t).expect("tangent vertex differs from endpoint");
            let side = l.side_of(keep).expect("endpoint is off the tangent line");
            if region.crossed_by(&l) {
                full_cell = false;
                region = clip_convex_by_halfplane(&region, &l, side)?;
            } else if region.vertices().iter().find_map(|v| l.side_of(v)) != Some(side) {
                return None;
            }
        }
    }
    if !target_beyond_edge(edge, source, &target.cell) {
        let sound = region.vertices().iter().all(|x| {
            target
                .cell
                .vertices()
                .iter()
                .all(|t| sees_unchecked(poly, x, t))
        });
        if !sound {
            return None;
        }
    }
    let (edge_shl, edge_ehl) = edge_half_lines(edge);
    let shl = ta.map_or(edge_shl, |t| HalfLine::away_from(a, t).expect("distinct points"));
    let ehl = tb.map_or(edge_ehl, |t| HalfLine::away_from(b, t).expect("distinct points"));
    Some(TempSubRegion {
        source_id: source.id,
        target_id: target.id,
        via_edge: edge.clone(),
        region,
        shl,
        ehl,
        full_cell,
    })
}

fn check_edge(edge: &Segment, source: &ScRegion) -> Result<(), GuardingError> {
    if source.cell.edge_segments().iter().any(|e| e.same_as(edge)) {
        Ok(())
    } else {
        Err(GuardingError::EdgeNotOnSource(edge.a.clone(), edge.b.clone(), source.id))
    }
}

/// Part of `source` from which all of `target` is visible across
/// `via_edge`, or `None` when the target is not inside CVP(via_edge).
pub fn findtsr(
    poly: &SimplePolygon,
    via_edge: &Segment,
    source: &ScRegion,
    target: &ScRegion,
) -> Result<Option<TempSubRegion>, GuardingError> {
    check_edge(via_edge, source)?;
    if target.id == source.id {
        return Ok(Some(full_tsr(source, source.id, via_edge)));
    }
    let cvp = complete_visibility_polygon(poly, via_edge)?;
    if !cvp.contains_convex(&target.cell) {
        return Ok(None);
    }
    let full_pair = source
        .cell
        .vertices()
        .iter()
        .all(|s| target.cell.vertices().iter().all(|t| sees_unchecked(poly, s, t)));
    Ok(tsr_within_cvp(poly, via_edge, source, target, full_pair))
}

/// Visibility from one cell vertex.
struct PointView {
    vp: VisibilityPolygon,
    /// VP boundary edges that cross the polygon's interior, with their lines.
    windows: Vec<(Point, Point, Line)>,
    /// Cells lying entirely inside the VP.
    sees_cell: FixedBitSet,
}

/// Per-point visibility of every cell: for each distinct cell vertex `v`,
/// VP(v) and the set of cells lying entirely inside it.
pub struct VisibilityIndex<'a> {
    poly: &'a SimplePolygon,
    cells: &'a [ScRegion],
    cell_points: Vec<Vec<usize>>,
    views: Vec<Option<PointView>>,
}

impl<'a> VisibilityIndex<'a> {
    /// Index for the vertices of every cell.
    pub fn new(poly: &'a SimplePolygon, cells: &'a [ScRegion]) -> Result<Self, GuardingError> {
        let all: Vec<usize> = (0..cells.len()).collect();
        Self::for_sources(poly, cells, &all)
    }

    /// Index covering only the vertices of the given source cells.
    pub fn for_sources(
        poly: &'a SimplePolygon,
        cells: &'a [ScRegion],
        sources: &[usize],
    ) -> Result<Self, GuardingError> {
        let mut ids: HashMap<&Point, usize> = HashMap::new();
        let mut points: Vec<&Point> = Vec::new();
        let cell_points: Vec<Vec<usize>> = cells
            .iter()
            .map(|c| {
                c.cell
                    .vertices()
                    .iter()
                    .map(|v| {
                        *ids.entry(v).or_insert_with(|| {
                            points.push(v);
                            points.len() - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let mut wanted = vec![false; points.len()];
        for &s in sources {
            for &p in &cell_points[s] {
                wanted[p] = true;
            }
        }
        let views: Vec<Option<PointView>> = (0..points.len())
            .into_par_iter()
            .map(|i| {
                if !wanted[i] {
                    return Ok(None);
                }
                let vp = visibility_polygon(poly, points[i])?;
                let mut sees_cell = FixedBitSet::with_capacity(cells.len());
                if vp.is_full() {
                    sees_cell.insert_range(..);
                    return Ok(Some(PointView { vp, windows: Vec::new(), sees_cell }));
                }
                let inside: Vec<bool> = points.iter().map(|w| vp.contains(w)).collect();
                for (c, pts) in cell_points.iter().enumerate() {
                    if pts.iter().all(|&w| inside[w]) {
                        sees_cell.insert(c);
                    }
                }
                let windows = vp
                    .region
                    .edges()
                    .filter(|(u, w)| !poly.on_boundary(&u.midpoint(w)))
                    .map(|(u, w)| {
                        let l = Line::through(u, w).expect("window has length");
                        (u.clone(), w.clone(), l)
                    })
                    .collect();
                Ok(Some(PointView { vp, windows, sees_cell }))
            })
            .collect::<Result<_, VisibilityError>>()?;
        Ok(VisibilityIndex {
            poly,
            cells,
            cell_points,
            views,
        })
    }

    fn view(&self, point: usize) -> &PointView {
        self.views[point]
            .as_ref()
            .expect("point belongs to an indexed cell")
    }

    fn bits(&self, point: usize) -> &FixedBitSet {
        &self.view(point).sees_cell
    }

    /// Cells inside CVP of the edge from vertex `k` to vertex `k + 1` of
    /// cell `source`.
    pub fn cvp_targets(&self, source: usize, k: usize) -> FixedBitSet {
        let pts = &self.cell_points[source];
        let mut bits = self.bits(pts[k]).clone();
        bits.intersect_with(self.bits(pts[(k + 1) % pts.len()]));
        bits
    }

    /// Cells whose every point is seen from every point of `source`.
    pub fn fully_visible_targets(&self, source: usize) -> FixedBitSet {
        let pts = &self.cell_points[source];
        let mut bits = self.bits(pts[0]).clone();
        for &p in &pts[1..] {
            bits.intersect_with(self.bits(p));
        }
        bits
    }

    /// All temp-sub-regions of one source cell, in compact form.
    pub fn cell_tsrs(&self, source: usize, materialize_full: bool) -> CellTsrs {
        let s = &self.cells[source];
        let full_pair = self.fully_visible_targets(source);
        let mut full_targets = FixedBitSet::with_capacity(self.cells.len());
        full_targets.insert(source);
        let edges = s.cell.edge_segments();
        let mut out = CellTsrs {
            source_id: source,
            full_targets,
            partial: Vec::new(),
            full: Vec::new(),
            count: 1,
        };
        if materialize_full {
            out.full.push(full_tsr(s, source, &edges[0]));
        }
        for (k, edge) in edges.iter().enumerate() {
            for t in self.cvp_targets(source, k).ones() {
                if t == source {
                    continue;
                }
                if full_pair.contains(t) && !materialize_full {
                    out.count += 1;
                    out.full_targets.insert(t);
                    continue;
                }
                let target = &self.cells[t];
                let Some(tsr) = tsr_within_cvp(self.poly, edge, s, target, full_pair.contains(t)) else {
                    continue;
                };
                out.count += 1;
                if tsr.full_cell {
                    out.full_targets.insert(t);
                    if materialize_full {
                        out.full.push(tsr);
                    }
                } else {
                    out.partial.push(tsr);
                }
            }
        }
        out
    }
}

impl VisibilityIndex<'_> {
    /// Guarding-regions of one source cell as `(face, visible-list)` pairs.
    ///
    /// The faces refine the temp-sub-region overlay along every visibility
    /// window of a target vertex that crosses the cell, so area-visibility of
    /// each target is constant on a face. A point sees a convex cell iff it
    /// sees all of the cell's vertices, which is how each face's list is
    /// read off at its centroid.
    pub fn guarding_faces(&self, tsrs: &CellTsrs) -> Vec<(ConvexRegion, FixedBitSet)> {
        let s = &self.cells[tsrs.source_id];
        let mut full = self.fully_visible_targets(tsrs.source_id);
        full.union_with(&tsrs.full_targets);
        let others: Vec<usize> = (0..self.cells.len()).filter(|&t| !full.contains(t)).collect();
        let mut pts: Vec<usize> = others
            .iter()
            .flat_map(|&t| self.cell_points[t].iter().copied())
            .collect();
        pts.sort_unstable();
        pts.dedup();

        let mut lines: BTreeSet<Line> = s.cell.edge_lines().into_iter().collect();
        for t in &tsrs.partial {
            lines.extend(t.region.edge_lines());
        }
        // Window lines of each point whose visibility changes inside the cell.
        let (x0, y0, x1, y1) = s.cell.approx_bbox();
        let slack = 1e-9 * (1.0 + x0.abs().max(x1.abs()).max(y0.abs()).max(y1.abs()));
        let crossing: HashMap<usize, Vec<Line>> = pts
            .iter()
            .filter_map(|&p| {
                let ls: Vec<Line> = self
                    .view(p)
                    .windows
                    .iter()
                    .filter(|(u, w, l)| {
                        let ((ux, uy), (wx, wy)) = (u.approx(), w.approx());
                        ux.max(wx) >= x0 - slack
                            && ux.min(wx) <= x1 + slack
                            && uy.max(wy) >= y0 - slack
                            && uy.min(wy) <= y1 + slack
                            && s.cell.crossed_by(l)
                            && s.cell.segment_meets_interior(u, w)
                    })
                    .map(|(_, _, l)| l.clone())
                    .collect();
                (!ls.is_empty()).then_some((p, ls))
            })
            .collect();
        // A target is open when its visibility varies over the cell: every
        // point with fixed visibility is seen and some point varies.
        let c = s.cell.centroid();
        let mut fixed: HashMap<usize, bool> = HashMap::new();
        let mut base = full;
        let mut open: Vec<(usize, Vec<usize>)> = Vec::new();
        for &t in &others {
            let pts_t = &self.cell_points[t];
            let fixed_ok = pts_t.iter().filter(|p| !crossing.contains_key(p)).all(|&p| {
                *fixed
                    .entry(p)
                    .or_insert_with(|| self.view(p).vp.contains(&c))
            });
            if !fixed_ok {
                continue;
            }
            let var: Vec<usize> = pts_t.iter().copied().filter(|p| crossing.contains_key(p)).collect();
            if var.is_empty() {
                base.insert(t);
            } else {
                open.push((t, var));
            }
        }
        if open.is_empty() && tsrs.partial.is_empty() {
            return vec![(s.cell.clone(), base)];
        }
        // Variable points, and for each overlay line the points it is a
        // window line of.
        let var_pts: Vec<usize> = {
            let mut v: Vec<usize> = open.iter().flat_map(|(_, var)| var.iter().copied()).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let slot: HashMap<usize, usize> = var_pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut tagged: BTreeMap<Line, Vec<usize>> = lines.into_iter().map(|l| (l, Vec::new())).collect();
        for (i, p) in var_pts.iter().enumerate() {
            for l in &crossing[p] {
                tagged.entry(l.clone()).or_default().push(i);
            }
        }
        let tagged: Vec<(Line, Vec<usize>)> = tagged.into_iter().collect();
        let open: Vec<(usize, Vec<usize>)> = open
            .into_iter()
            .map(|(t, var)| (t, var.iter().map(|p| slot[p]).collect()))
            .collect();

        // Recursive splitting. A point's visibility is constant on a piece
        // none of its window lines cross, so it is read once at that piece's
        // centroid and inherited below.
        let nv = var_pts.len();
        let mut out = Vec::new();
        let all: Vec<usize> = (0..tagged.len()).collect();
        let mut stack = vec![(s.cell.clone(), all, FixedBitSet::with_capacity(nv), FixedBitSet::with_capacity(nv))];
        while let Some((r, cand, mut known, mut value)) = stack.pop() {
            let cand: Vec<usize> = cand.into_iter().filter(|&i| r.crossed_by(&tagged[i].0)).collect();
            let mut active = FixedBitSet::with_capacity(nv);
            for &i in &cand {
                for &k in &tagged[i].1 {
                    active.insert(k);
                }
            }
            let mut settle = active.clone();
            settle.union_with(&known);
            settle.toggle_range(..);
            if settle.ones().next().is_some() {
                let rc = r.centroid();
                for k in settle.ones() {
                    known.insert(k);
                    value.set(k, self.view(var_pts[k]).vp.contains(&rc));
                }
            }
            let Some((&first, rest)) = cand.split_first() else {
                let mut vl = base.clone();
                for (t, var) in &open {
                    if var.iter().all(|&k| value.contains(k)) {
                        vl.insert(*t);
                    }
                }
                debug_assert!({
                    let fc = r.centroid();
                    tsrs.partial
                        .iter()
                        .all(|t| !t.region.contains(&fc) || vl.contains(t.target_id))
                });
                out.push((r, vl));
                continue;
            };
            let (a, b) = r.split(&tagged[first].0);
            for part in [a, b].into_iter().flatten() {
                stack.push((part, rest.to_vec(), known.clone(), value.clone()));
            }
        }
        for (f, _) in &mut out {
            f.canonicalize();
        }
        out.sort_by(|a, b| a.0.vertices().cmp(b.0.vertices()));
        out
    }
}

/// Temp-sub-regions of one source cell: targets seen from the whole cell
/// as a set, the rest as explicit regions.
#[derive(Debug, Clone)]
pub struct CellTsrs {
    pub source_id: usize,
    pub full_targets: FixedBitSet,
    pub partial: Vec<TempSubRegion>,
    /// Full-cell temp-sub-regions, only when requested.
    pub full: Vec<TempSubRegion>,
    /// Number of temp-sub-regions found, including the self one.
    pub count: usize,
}

/// Every non-empty temp-sub-region of `source` over all its edges and all
/// targets, starting with the trivial self one.
pub fn temp_sub_regions_for_cell(
    poly: &SimplePolygon,
    source: &ScRegion,
    all_cells: &[ScRegion],
) -> Result<Vec<TempSubRegion>, GuardingError> {
    let index = VisibilityIndex::for_sources(poly, all_cells, &[source.id])?;
    let tsrs = index.cell_tsrs(source.id, true);
    let mut out = tsrs.full;
    out.extend(tsrs.partial);
    Ok(out)
}

/// Overlay faces of `source` with their visible-lists.
fn overlay(
    source: &ScRegion,
    full_targets: &FixedBitSet,
    partial: &[&TempSubRegion],
) -> Vec<(ConvexRegion, FixedBitSet)> {
    if partial.is_empty() {
        return vec![(source.cell.clone(), full_targets.clone())];
    }
    let mut lines: BTreeSet<Line> = source.cell.edge_lines().into_iter().collect();
    for t in partial {
        lines.extend(t.region.edge_lines());
    }
    let lines: Vec<Line> = lines.into_iter().collect();
    let clip = SimplePolygon::from(&source.cell);
    let faces = arrangement_faces(&lines, &clip).expect("cell edge lines are in the overlay");
    faces
        .into_iter()
        .map(|f| {
            let c = f.centroid();
            let mut vl = full_targets.clone();
            for t in partial {
                if !vl.contains(t.target_id) && t.region.contains(&c) {
                    vl.insert(t.target_id);
                }
            }
            (f, vl)
        })
        .collect()
}

/// Splits `source` into guarding-regions: faces of the overlay of all
/// temp-sub-region boundaries, each tagged with the source plus every target
/// whose temp-sub-region contains it. Ids are local, starting at 0.
pub fn decompose_scr(
    source: &ScRegion,
    tsrs: &[TempSubRegion],
    cell_count: usize,
) -> Result<Vec<GuardingRegion>, GuardingError> {
    let mut full_targets = FixedBitSet::with_capacity(cell_count.max(source.id + 1));
    full_targets.insert(source.id);
    for t in tsrs {
        if t.source_id != source.id {
            return Err(GuardingError::TsrSourceMismatch {
                expected: source.id,
                found: t.source_id,
            });
        }
        full_targets.grow(t.target_id + 1);
        if t.full_cell {
            full_targets.insert(t.target_id);
        }
    }
    let partial: Vec<&TempSubRegion> = tsrs
        .iter()
        .filter(|t| !t.full_cell && !full_targets.contains(t.target_id))
        .collect();
    Ok(overlay(source, &full_targets, &partial)
        .into_iter()
        .enumerate()
        .map(|(id, (region, visible_list))| GuardingRegion {
            id,
            source_id: source.id,
            region,
            visible_list,
        })
        .collect())
}

/// Guarding-regions of every cell and the total temp-sub-region count.
#[derive(Debug, Clone)]
pub struct GuardingOutput {
    pub regions: Vec<GuardingRegion>,
    pub tsr_count: usize,
}

/// Guarding-regions of all cells, numbered globally in cell order.
pub fn build_all_guarding_regions(
    poly: &SimplePolygon,
    cells: &[ScRegion],
) -> Result<Vec<GuardingRegion>, GuardingError> {
    Ok(guarding_regions_with_stats(poly, cells)?.regions)
}

pub fn guarding_regions_with_stats(
    poly: &SimplePolygon,
    cells: &[ScRegion],
) -> Result<GuardingOutput, GuardingError> {
    let index = VisibilityIndex::new(poly, cells)?;
    let tsrs = all_temp_sub_regions(&index);
    let tsr_count = tsrs.iter().map(|t| t.count).sum();
    Ok(GuardingOutput {
        regions: guarding_regions_from(&index, &tsrs),
        tsr_count,
    })
}

/// Compact temp-sub-regions of every indexed cell, in cell order.
pub fn all_temp_sub_regions(index: &VisibilityIndex<'_>) -> Vec<CellTsrs> {
    (0..index.cells.len())
        .into_par_iter()
        .map(|i| index.cell_tsrs(i, false))
        .collect()
}

/// Guarding-regions of every cell, numbered globally in cell order.
pub fn guarding_regions_from(index: &VisibilityIndex<'_>, tsrs: &[CellTsrs]) -> Vec<GuardingRegion> {
    let per_cell: Vec<Vec<(ConvexRegion, FixedBitSet)>> =
        tsrs.par_iter().map(|t| index.guarding_faces(t)).collect();
    let mut regions = Vec::new();
    for (t, faces) in tsrs.iter().zip(per_cell) {
        for (region, visible_list) in faces {
            regions.push(GuardingRegion {
                id: regions.len(),
                source_id: t.source_id,
                region,
                visible_list,
            });
        }
    }
    regions
}
