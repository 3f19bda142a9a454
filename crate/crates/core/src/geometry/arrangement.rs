use super::line::Line;
use super::polygon::{ConvexRegion, Containment, SimplePolygon};
use super::GeometryError;
use std::collections::HashSet;

/// Bounded faces of the arrangement of `lines` lying inside `clip`.
///
/// Every supporting line of a `clip` edge must be among `lines`; the faces
/// then tile `clip` exactly. Output is sorted by smallest vertex.
pub fn arrangement_faces(
    lines: &[Line],
    clip: &SimplePolygon,
) -> Result<Vec<ConvexRegion>, GeometryError> {
    arrangement_faces_capped(lines, clip, usize::MAX)
}

/// As [`arrangement_faces`], aborting once more than `max_faces` faces exist.
pub fn arrangement_faces_capped(
    lines: &[Line],
    clip: &SimplePolygon,
    max_faces: usize,
) -> Result<Vec<ConvexRegion>, GeometryError> {
    let unique: HashSet<&Line> = lines.iter().collect();
    let edge_lines = clip.edge_lines();
    for l in &edge_lines {
        if !unique.contains(l) {
            return Err(GeometryError::PreconditionViolated(format!(
                "edge-supporting line {l:?} missing from the line set"
            )));
        }
    }
    let (x0, y0, x1, y1) = clip.bbox();
    let bbox = ConvexRegion::rectangle(x0, y0, x1, y1)?;

    let mut faces = vec![bbox];
    for l in &edge_lines {
        faces = split_all(faces, l);
    }
    faces.retain(|f| clip.locate(&f.centroid()) == Containment::Inside);
    if faces.len() > max_faces {
        return Err(GeometryError::CellBudgetExceeded { limit: max_faces });
    }

    let edge_set: HashSet<&Line> = edge_lines.iter().collect();
    let mut rest: Vec<&Line> = unique.into_iter().filter(|l| !edge_set.contains(l)).collect();
    rest.sort();
    let mut out = Vec::with_capacity(faces.len());
    for f in faces {
        let cap = max_faces.saturating_sub(out.len());
        let faces = convex_arrangement_capped(f, &rest, cap)
            .map_err(|_| GeometryError::CellBudgetExceeded { limit: max_faces })?;
        out.extend(faces);
    }
    Ok(sort_faces(out))
}

/// Faces of the arrangement of `lines` inside the convex `region`, unsorted.
/// Recursive splitting: each piece only carries the lines that still cross
/// it, which is far cheaper than testing every face against every line.
fn convex_arrangement_capped(
    region: ConvexRegion,
    lines: &[&Line],
    max_faces: usize,
) -> Result<Vec<ConvexRegion>, GeometryError> {
    let mut out = Vec::new();
    let mut stack = vec![(region, lines.to_vec())];
    while let Some((r, cand)) = stack.pop() {
        let cand: Vec<&Line> = cand.into_iter().filter(|l| r.crossed_by(l)).collect();
        match cand.split_first() {
            None => out.push(r),
            Some((l, rest)) => {
                let (a, b) = r.split(l);
                for part in [a, b].into_iter().flatten() {
                    stack.push((part, rest.to_vec()));
                }
            }
        }
        // Pending pieces each hold at least one final face.
        if out.len() + stack.len() > max_faces {
            return Err(GeometryError::CellBudgetExceeded { limit: max_faces });
        }
    }
    Ok(out)
}

fn split_all(faces: Vec<ConvexRegion>, line: &Line) -> Vec<ConvexRegion> {
    let mut out = Vec::with_capacity(faces.len() + 8);
    for f in faces {
        if !f.crossed_by(line) {
            out.push(f);
            continue;
        }
        let (a, b) = f.split(line);
        out.extend(a);
        out.extend(b);
    }
    out
}

pub(crate) fn sort_faces(mut faces: Vec<ConvexRegion>) -> Vec<ConvexRegion> {
    for f in &mut faces {
        f.canonicalize();
    }
    faces.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    faces
}
