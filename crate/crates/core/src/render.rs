//! SVG diagrams of crease patterns and outer patterns.
//!
//! Creases are solid, sheet boundaries dashed, rays end in arrowheads at
//! the clip box. Wedges and layer numbers are optional overlays.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::geom::{clip_segment, cyclic_gaps, ConvexPolygon, Point2, Wedge, EPS_ANG};
use crate::layers::Layering;
use crate::outer::{OuterPattern, Region};
use crate::pattern::CreasePattern;
use crate::sheet::FoldedSheet;

/// Drawing units per sheet unit.
pub const SCALE: f64 = 100.0;

#[derive(Clone, Debug, Default)]
pub struct Overlay {
    pub wedges: Vec<Wedge>,
    /// Text placed at sheet points, e.g. layer numbers.
    pub labels: Vec<(Point2, String)>,
}

struct Svg {
    body: String,
    min: Point2,
    max: Point2,
}

impl Svg {
    fn new(min: Point2, max: Point2) -> Svg {
        Svg {
            body: String::new(),
            min,
            max,
        }
    }

    fn xy(&self, p: Point2) -> (f64, f64) {
        (p.x * SCALE, -p.y * SCALE)
    }

    fn line(&mut self, a: Point2, b: Point2, class: &str) {
        let ((x1, y1), (x2, y2)) = (self.xy(a), self.xy(b));
        let marker = if class == "ray" { r#" marker-end="url(#arrow)""# } else { "" };
        let _ = writeln!(
            self.body,
            r#"  <line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"{marker}/>"#
        );
    }

    fn polygon(&mut self, pts: &[Point2], class: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.xy(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(self.body, r#"  <polygon class="{class}" points="{}"/>"#, coords.join(" "));
    }

    fn circle(&mut self, c: Point2, r: f64, class: &str) {
        let (x, y) = self.xy(c);
        let _ = writeln!(
            self.body,
            r#"  <circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{:.3}"/>"#,
            r * SCALE
        );
    }

    fn text(&mut self, at: Point2, s: &str) {
        let (x, y) = self.xy(at);
        let _ = writeln!(
            self.body,
            r#"  <text class="label" x="{x:.3}" y="{y:.3}">{s}</text>"#
        );
    }

    fn finish(self) -> String {
        let (x0, y0) = (self.min.x * SCALE, -self.max.y * SCALE);
        let (w, h) = ((self.max.x - self.min.x) * SCALE, (self.max.y - self.min.y) * SCALE);
        format!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.3} {y0:.3} {w:.3} {h:.3}">
  <defs>
    <marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto">
      <path d="M0,0 L10,5 L0,10 z"/>
    </marker>
  </defs>
  <style>
    .segment, .ray, .chord {{ stroke: black; stroke-width: 1.5; fill: none; }}
    .boundary {{ stroke: steelblue; stroke-width: 1; stroke-dasharray: 6 4; fill: none; }}
    .wedge {{ fill: gray; fill-opacity: 0.25; stroke: none; }}
    .point {{ fill: black; }}
    .label {{ font: 12px sans-serif; text-anchor: middle; dominant-baseline: middle; }}
  </style>
{}</svg>
"#,
            self.body
        )
    }
}

fn overlay(svg: &mut Svg, o: &Overlay, clip: &ConvexPolygon, r: f64) {
    for w in &o.wedges {
        let shape = w.clipped(r).intersect(clip);
        if !shape.is_empty() {
            svg.polygon(&shape.pts, "wedge");
        }
    }
    for (p, s) in &o.labels {
        svg.text(*p, s);
    }
}

/// Draw a pattern on the infinite sheet. The view is the vertex bounding
/// box inflated 1.5 times about its centre; rays are clipped to it.
pub fn render_pattern(p: &CreasePattern, o: &Overlay) -> String {
    let pts: Vec<Point2> = p.vertices.values().copied().collect();
    let (mut lo, mut hi) = (Point2::new(-1.0, -1.0), Point2::new(1.0, 1.0));
    if let Some(&first) = pts.first() {
        lo = first;
        hi = first;
        for q in &pts {
            lo = Point2::new(lo.x.min(q.x), lo.y.min(q.y));
            hi = Point2::new(hi.x.max(q.x), hi.y.max(q.y));
        }
    }
    let c = lo.lerp(hi, 0.5);
    // a single vertex still gets a unit-sized view
    let half = Point2::new(((hi.x - lo.x) / 2.0).max(1.0), ((hi.y - lo.y) / 2.0).max(1.0)).scale(1.5);
    let (min, max) = (c - half, c + half);
    let view = ConvexPolygon::new(vec![min, Point2::new(max.x, min.y), max, Point2::new(min.x, max.y)]);
    let lines: Vec<(Point2, Point2)> = view.edges().collect();
    let reach = 4.0 * (half.x + half.y + c.norm());
    let mut svg = Svg::new(min, max);
    overlay(&mut svg, o, &view, reach);
    for s in 0..p.crease_count() {
        let (a, b) = p.crease_points(s);
        if p.is_ray(s) {
            let far = a + (b - a).scale(reach / a.dist(b).max(1e-12));
            if let Some((x, y)) = clip_segment(a, far, &lines, 0.0) {
                svg.line(x, y, "ray");
            }
        } else {
            svg.line(a, b, "segment");
        }
    }
    for &q in &pts {
        svg.circle(q, 0.03, "point");
    }
    svg.finish()
}

/// Draw an outer pattern: dashed sheet boundary, solid chords.
pub fn render_outer(p: &OuterPattern, o: &Overlay) -> String {
    let (min, max) = match &p.region {
        Region::Disk { center, radius } => {
            let r = Point2::new(radius * 1.1, radius * 1.1);
            (*center - r, *center + r)
        }
        Region::Polygon { corners } => {
            let lo = corners.iter().fold(Point2::new(f64::MAX, f64::MAX), |a, q| {
                Point2::new(a.x.min(q.x), a.y.min(q.y))
            });
            let hi = corners.iter().fold(Point2::new(f64::MIN, f64::MIN), |a, q| {
                Point2::new(a.x.max(q.x), a.y.max(q.y))
            });
            let pad = (hi - lo).scale(0.05);
            (lo - pad, hi + pad)
        }
    };
    let mut svg = Svg::new(min, max);
    let view = ConvexPolygon::new(vec![min, Point2::new(max.x, min.y), max, Point2::new(min.x, max.y)]);
    overlay(&mut svg, o, &view, 4.0 * max.dist(min));
    match &p.region {
        Region::Disk { center, radius } => svg.circle(*center, *radius, "boundary"),
        Region::Polygon { corners } => svg.polygon(corners, "boundary"),
    }
    for c in 0..p.chords.len() {
        let (a, b) = p.chord_points(c);
        svg.line(a, b, "chord");
    }
    for &q in p.points.values() {
        svg.circle(q, 0.02, "point");
    }
    svg.finish()
}

/// Gaps at each vertex wider than that vertex's narrowest gap, e.g. the
/// two outermost wedges of a base star.
pub fn wide_gap_wedges(p: &CreasePattern) -> Vec<Wedge> {
    let mut out = vec![];
    for (&v, &apex) in &p.vertices {
        let mut dirs = p.directions_at(v);
        dirs.sort_by(|a, b| a.cmp_value(b));
        let Ok(gaps) = cyclic_gaps(&dirs) else {
            continue;
        };
        if gaps.len() < 2 {
            continue;
        }
        let min = gaps.iter().map(|g| g.as_turns_f64()).fold(f64::INFINITY, f64::min);
        for (d, g) in dirs.iter().zip(&gaps) {
            if g.as_turns_f64() > min + EPS_ANG {
                out.push(Wedge {
                    apex,
                    start_dir: *d,
                    opening: *g,
                });
            }
        }
    }
    out
}

/// Stack position of every face (0 = bottom) at the centre of its region.
/// Faces are ranked by a topological sort of the layering, ties broken by
/// face id.
pub fn layer_labels(sheet: &FoldedSheet, layering: &Layering) -> Vec<(Point2, String)> {
    let n = sheet.faces.len();
    let mut indeg = vec![0usize; n];
    for &(_, b) in &layering.below {
        if b < n {
            indeg[b] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&f| indeg[f] == 0).collect();
    let mut rank = vec![usize::MAX; n];
    let mut next = 0;
    while let Some(f) = ready.pop_first() {
        rank[f] = next;
        next += 1;
        for &(a, b) in layering.below.range((f, 0)..=(f, usize::MAX)) {
            debug_assert_eq!(a, f);
            if b < n {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
    }
    (0..n)
        .map(|f| {
            let label = if rank[f] == usize::MAX { "?".to_string() } else { rank[f].to_string() };
            (sheet.faces[f].region.centroid(), label)
        })
        .collect()
}
