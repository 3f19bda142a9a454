//! SVG picture of a run: polygon, cells, guarding-regions and guards.
//!
//! Coordinates are rounded to 6 decimals here and nowhere else.

use crate::decomposition::ScRegion;
use crate::geometry::{Point, SimplePolygon};
use crate::guarding::GuardingRegion;
use std::fmt::Write as _;
use std::path::Path;

fn coord(p: &Point) -> String {
    let (x, y) = p.approx();
    // Flip y so the picture has the usual orientation.
    format!("{:.6},{:.6}", x, -y)
}

fn points_attr<'a>(pts: impl IntoIterator<Item = &'a Point>) -> String {
    pts.into_iter().map(coord).collect::<Vec<_>>().join(" ")
}

/// Fill for a guarding-region seeing `seen` of `total` cells: pale for few,
/// saturated for many.
fn fill(seen: usize, total: usize) -> String {
    let t = if total == 0 { 0.0 } else { seen as f64 / total as f64 };
    let light = 92.0 - 52.0 * t;
    format!("hsl(210,70%,{light:.0}%)")
}

pub fn render_svg_string(
    poly: &SimplePolygon,
    cells: &[ScRegion],
    grs: &[GuardingRegion],
    guards: &[Point],
) -> String {
    let (x0, y0, x1, y1) = poly.approx_bbox();
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let pad = span * 0.05;
    let stroke = span / 400.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="800" height="{:.0}">"#,
        x0 - pad,
        -y1 - pad,
        x1 - x0 + 2.0 * pad,
        y1 - y0 + 2.0 * pad,
        800.0 * (y1 - y0 + 2.0 * pad) / (x1 - x0 + 2.0 * pad),
    );
    let _ = writeln!(out, r#"<g id="guarding-regions" stroke="none">"#);
    for g in grs {
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{}"><title>gr {} sees {} cells</title></polygon>"#,
            points_attr(g.region.vertices()),
            fill(g.visible_list.count_ones(..), cells.len()),
            g.id,
            g.visible_list.count_ones(..),
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<g id="cells" fill="none" stroke="#555" stroke-width="{:.6}">"##,
        stroke
    );
    for c in cells {
        let _ = writeln!(out, r#"<polygon points="{}"/>"#, points_attr(c.cell.vertices()));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<polygon id="polygon" points="{}" fill="none" stroke="#000" stroke-width="{:.6}"/>"##,
        points_attr(poly.vertices()),
        stroke * 3.0
    );
    let _ = writeln!(out, r##"<g id="guards" fill="#d62728">"##);
    for g in guards {
        let (x, y) = g.approx();
        let _ = writeln!(out, r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}"/>"#, x, -y, stroke * 6.0);
    }
    let _ = writeln!(out, "</g>\n</svg>");
    out
}

pub fn render_svg(
    poly: &SimplePolygon,
    cells: &[ScRegion],
    grs: &[GuardingRegion],
    guards: &[Point],
    path: impl AsRef<Path>,
) -> std::io::Result<()> {
    std::fs::write(path, render_svg_string(poly, cells, grs, guards))
}
