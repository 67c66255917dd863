//! Outer foldings of bounded convex sheets: every folding point lies on
//! the boundary and creases are non-crossing chords.

mod disk;
mod safe;
mod spine;
mod square;

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{orient, ConvexPolygon, Isometry2, Point2, EPS_LEN};
use crate::graph::MultiGraph;
use crate::layers::LayerError;
use crate::sheet::{FoldedSheet, SheetCrease, SheetFace};

pub use disk::{disk_fold_plan, outerplanar_order, realize_outerplanar_on_disk};
pub use safe::{is_safe_crease, ChordSide, SafeReason, SafeReport};
pub use spine::{
    min_sides, realize_tree_on_polygon, realize_tree_on_square, spine, square_tree_realizable,
    SpineInfo,
};
pub use square::{square_fold_plan, Corner, CreaseType, SquareCase, SquareFrame, SquarePlan};

/// Sides of the polygon used to approximate a disk.
const DISK_SAMPLES: usize = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OuterError {
    #[error("invalid outer pattern: {0:?}")]
    Invalid(Vec<OuterViolation>),
    #[error("unknown chord {0}")]
    UnknownChord(usize),
    #[error("this operation needs a {0} sheet")]
    WrongRegion(&'static str),
    #[error("graph is not outerplanar")]
    NotOuterplanar,
    #[error("not a tree")]
    NotATree,
    #[error("tree needs {needed} sides but the polygon has {sides}")]
    TooFewSides { needed: usize, sides: usize },
    #[error("spine has {0} leaves > 4")]
    SpineLeaves(usize),
    #[error("creases join both opposite pairs of sides")]
    BothCrossTypes,
    #[error("region {0} has no safe crease")]
    NoSafeCrease(usize),
    #[error(transparent)]
    Layer(#[from] LayerError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Disk { center: Point2, radius: f64 },
    /// Counter-clockwise corners of a convex polygon.
    Polygon { corners: Vec<Point2> },
}

impl Region {
    pub fn unit_square() -> Region {
        Region::Polygon {
            corners: vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(0.0, 1.0),
            ],
        }
    }

    /// Regular `k`-gon inscribed in the unit circle, first corner at angle 0.
    pub fn regular_polygon(k: usize) -> Region {
        let corners = (0..k)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / k as f64;
                Point2::new(a.cos(), a.sin())
            })
            .collect();
        Region::Polygon { corners }
    }

    fn scale(&self) -> f64 {
        match self {
            Region::Disk { radius, .. } => *radius,
            Region::Polygon { corners } => corners
                .iter()
                .flat_map(|p| corners.iter().map(move |q| p.dist(*q)))
                .fold(0.0, f64::max),
        }
    }

    fn perimeter_sides(corners: &[Point2]) -> Vec<f64> {
        let k = corners.len();
        (0..k).map(|i| corners[i].dist(corners[(i + 1) % k])).collect()
    }

    /// Point at boundary parameter `t` (arc length normalized to `[0, 1)`,
    /// starting at angle 0 for disks and at the first corner for polygons).
    pub fn point_at(&self, t: f64) -> Point2 {
        let t = t.rem_euclid(1.0);
        match self {
            Region::Disk { center, radius } => {
                let a = std::f64::consts::TAU * t;
                *center + Point2::new(a.cos(), a.sin()).scale(*radius)
            }
            Region::Polygon { corners } => {
                let sides = Self::perimeter_sides(corners);
                let total: f64 = sides.iter().sum();
                let mut s = t * total;
                for (i, &len) in sides.iter().enumerate() {
                    if s <= len || i + 1 == sides.len() {
                        let j = (i + 1) % corners.len();
                        return corners[i].lerp(corners[j], (s / len).min(1.0));
                    }
                    s -= len;
                }
                unreachable!()
            }
        }
    }

    /// Boundary parameter of a point on (or near) the boundary.
    pub fn param(&self, p: Point2) -> f64 {
        match self {
            Region::Disk { center, .. } => {
                let d = p - *center;
                (d.y.atan2(d.x) / std::f64::consts::TAU).rem_euclid(1.0)
            }
            Region::Polygon { corners } => {
                let sides = Self::perimeter_sides(corners);
                let total: f64 = sides.iter().sum();
                let k = corners.len();
                let mut best = (f64::INFINITY, 0.0);
                let mut acc = 0.0;
                for i in 0..k {
                    let (a, b) = (corners[i], corners[(i + 1) % k]);
                    let t = ((p - a).dot(b - a) / (sides[i] * sides[i])).clamp(0.0, 1.0);
                    let d = p.dist(a.lerp(b, t));
                    if d < best.0 - 1e-15 {
                        best = (d, acc + t * sides[i]);
                    }
                    acc += sides[i];
                }
                (best.1 / total).rem_euclid(1.0)
            }
        }
    }

    pub fn distance_to_boundary(&self, p: Point2) -> f64 {
        match self {
            Region::Disk { center, radius } => (p.dist(*center) - radius).abs(),
            Region::Polygon { .. } => p.dist(self.point_at(self.param(p))),
        }
    }

    /// Corner parameters (none for a disk).
    pub fn corner_params(&self) -> Vec<f64> {
        match self {
            Region::Disk { .. } => vec![],
            Region::Polygon { corners } => {
                let sides = Self::perimeter_sides(corners);
                let total: f64 = sides.iter().sum();
                let mut acc = 0.0;
                sides
                    .iter()
                    .map(|s| {
                        let t = acc / total;
                        acc += s;
                        t
                    })
                    .collect()
            }
        }
    }

    /// Boundary polyline from parameter `t0` counter-clockwise to `t1`,
    /// including both ends and every corner (or disk sample) in between.
    pub fn arc(&self, t0: f64, t1: f64) -> Vec<Point2> {
        let span = (t1 - t0).rem_euclid(1.0);
        let inner: Vec<f64> = match self {
            Region::Disk { .. } => {
                let m = ((span * DISK_SAMPLES as f64).ceil() as usize).max(2);
                (1..m).map(|i| span * i as f64 / m as f64).collect()
            }
            Region::Polygon { .. } => {
                let mut v: Vec<f64> = self
                    .corner_params()
                    .into_iter()
                    .map(|c| (c - t0).rem_euclid(1.0))
                    .filter(|&s| s > 1e-12 && s < span - 1e-12)
                    .collect();
                v.sort_by(f64::total_cmp);
                v
            }
        };
        let mut out = vec![self.point_at(t0)];
        out.extend(inner.into_iter().map(|s| self.point_at(t0 + s)));
        out.push(self.point_at(t1));
        out
    }

    /// The region as a convex polygon whose corners include `extra`
    /// boundary parameters (disks are approximated by an inscribed polygon).
    fn polygon_with(&self, extra: &[f64]) -> ConvexPolygon {
        let mut ts: Vec<f64> = extra.to_vec();
        match self {
            Region::Disk { .. } => {
                // one sample inside every arc keeps short caps non-degenerate
                let mut sorted = extra.to_vec();
                sorted.sort_by(f64::total_cmp);
                for (i, &t) in sorted.iter().enumerate() {
                    let next = sorted.get(i + 1).copied().unwrap_or(sorted[0] + 1.0);
                    ts.push(((t + next) / 2.0).rem_euclid(1.0));
                }
                ts.extend((0..DISK_SAMPLES).map(|i| i as f64 / DISK_SAMPLES as f64))
            }
            Region::Polygon { .. } => ts.extend(self.corner_params()),
        }
        ts.sort_by(f64::total_cmp);
        ts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        ConvexPolygon::new(ts.into_iter().map(|t| self.point_at(t)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OuterPattern {
    pub region: Region,
    /// Folding points by id.
    pub points: BTreeMap<usize, Point2>,
    /// Creases as pairs of point ids.
    pub chords: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OuterViolation {
    OffBoundary { point: usize },
    UnknownPoint { chord: usize, point: usize },
    CoincidentPoints { points: (usize, usize) },
    Degenerate { chord: usize },
    AlongBoundary { chord: usize },
    Duplicate { chords: (usize, usize) },
    Crossing { chords: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OuterReport {
    pub violations: Vec<OuterViolation>,
}

impl OuterReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl OuterPattern {
    pub fn new(region: Region) -> Self {
        OuterPattern {
            region,
            points: BTreeMap::new(),
            chords: vec![],
        }
    }

    pub fn add_point_at(&mut self, t: f64) -> usize {
        let p = self.region.point_at(t);
        self.add_point(p)
    }

    pub fn add_point(&mut self, p: Point2) -> usize {
        let id = self.points.keys().next_back().map_or(0, |k| k + 1);
        self.points.insert(id, p);
        id
    }

    pub fn add_chord(&mut self, a: usize, b: usize) -> usize {
        self.chords.push((a, b));
        self.chords.len() - 1
    }

    pub fn param(&self, id: usize) -> f64 {
        self.region.param(self.points[&id])
    }

    pub fn chord_points(&self, c: usize) -> (Point2, Point2) {
        let (a, b) = self.chords[c];
        (self.points[&a], self.points[&b])
    }

    fn eps(&self) -> f64 {
        EPS_LEN * self.region.scale().max(1.0) * 1e3
    }

    /// Graph of the folding: one node per folding point (in id order), one
    /// edge per chord.
    pub fn chord_graph(&self) -> MultiGraph {
        let index: BTreeMap<usize, usize> =
            self.points.keys().enumerate().map(|(i, &k)| (k, i)).collect();
        MultiGraph::with_edges(
            self.points.len(),
            self.chords.iter().map(|(a, b)| (index[a], index[b])).collect(),
        )
    }

    pub fn validate(&self) -> OuterReport {
        validate_outer(self)
    }
}

pub fn validate_outer(p: &OuterPattern) -> OuterReport {
    let eps = p.eps();
    let mut violations = vec![];
    for (&id, &q) in &p.points {
        if p.region.distance_to_boundary(q) > eps {
            violations.push(OuterViolation::OffBoundary { point: id });
        }
    }
    let ids: Vec<usize> = p.points.keys().copied().collect();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if p.points[&a].dist(p.points[&b]) <= eps {
                violations.push(OuterViolation::CoincidentPoints { points: (a, b) });
            }
        }
    }
    let mut known = vec![];
    for (c, &(a, b)) in p.chords.iter().enumerate() {
        let missing = [a, b].into_iter().find(|x| !p.points.contains_key(x));
        if let Some(point) = missing {
            violations.push(OuterViolation::UnknownPoint { chord: c, point });
            continue;
        }
        if a == b {
            violations.push(OuterViolation::Degenerate { chord: c });
            continue;
        }
        let (pa, pb) = p.chord_points(c);
        if p.region.distance_to_boundary(pa.lerp(pb, 0.5)) <= eps {
            violations.push(OuterViolation::AlongBoundary { chord: c });
            continue;
        }
        known.push(c);
    }
    for (i, &c) in known.iter().enumerate() {
        for &d in &known[i + 1..] {
            let (a, b) = p.chords[c];
            let (x, y) = p.chords[d];
            if (a, b) == (x, y) || (a, b) == (y, x) {
                violations.push(OuterViolation::Duplicate { chords: (c, d) });
            } else if chords_cross(p, c, d) {
                violations.push(OuterViolation::Crossing { chords: (c, d) });
            }
        }
    }
    OuterReport { violations }
}

/// Chords with four distinct endpoints cross iff their endpoints
/// interleave along the boundary.
fn chords_cross(p: &OuterPattern, c: usize, d: usize) -> bool {
    let (a, b) = p.chords[c];
    let (x, y) = p.chords[d];
    if a == x || a == y || b == x || b == y {
        return false;
    }
    let (ta, tb) = (p.param(a), p.param(b));
    let inside = |t: f64| (t - ta).rem_euclid(1.0) < (tb - ta).rem_euclid(1.0);
    inside(p.param(x)) != inside(p.param(y))
}

/// Whether the open segments `p q` and `r s` cross at a point interior to
/// both.
pub(crate) fn segments_cross(p: Point2, q: Point2, r: Point2, s: Point2, eps: f64) -> bool {
    let d1 = orient(p, q, r) / p.dist(q).max(1e-300);
    let d2 = orient(p, q, s) / p.dist(q).max(1e-300);
    let d3 = orient(r, s, p) / r.dist(s).max(1e-300);
    let d4 = orient(r, s, q) / r.dist(s).max(1e-300);
    ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps))
        && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
}

fn boundary_dist(f: &ConvexPolygon, q: Point2) -> f64 {
    f.edges()
        .map(|(a, b)| {
            let d = b - a;
            let t = ((q - a).dot(d) / d.dot(d).max(1e-300)).clamp(0.0, 1.0);
            q.dist(a + d.scale(t))
        })
        .fold(f64::INFINITY, f64::min)
}

/// The folded sheet of an outer pattern: faces are the regions cut out by
/// the chords, sheet crease `i` is chord `i`, and the base face is the one
/// of largest area.
#[derive(Clone, Debug)]
pub struct OuterSheet {
    pub sheet: FoldedSheet,
    pub base: usize,
}

impl OuterSheet {
    /// Faces on the two sides of chord `c`: (left of `a -> b`, right).
    pub fn chord_faces(&self, c: usize) -> (usize, usize) {
        self.sheet.creases[c].faces
    }

    /// Dual tree adjacency: `(chord, neighbour face)` per face.
    pub fn dual(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![vec![]; self.sheet.faces.len()];
        for (c, cr) in self.sheet.creases.iter().enumerate() {
            adj[cr.faces.0].push((c, cr.faces.1));
            adj[cr.faces.1].push((c, cr.faces.0));
        }
        adj
    }
}

pub fn outer_sheet(p: &OuterPattern) -> Result<OuterSheet, OuterError> {
    let report = validate_outer(p);
    if !report.is_valid() {
        return Err(OuterError::Invalid(report.violations));
    }
    let params: Vec<f64> = p.points.values().map(|&q| p.region.param(q)).collect();
    let mut faces = vec![p.region.polygon_with(&params)];
    for c in 0..p.chords.len() {
        let (a, b) = p.chord_points(c);
        let mid = a.lerp(b, 0.5);
        // the face holding the midpoint most deeply
        let depth = |f: &ConvexPolygon| {
            f.edges()
                .map(|(u, v)| orient(u, v, mid) / u.dist(v).max(1e-300))
                .fold(f64::INFINITY, f64::min)
        };
        let f = (0..faces.len())
            .max_by(|&f, &g| depth(&faces[f]).total_cmp(&depth(&faces[g])))
            .expect("at least one face");
        let left = faces[f].clip(a, b, true);
        let right = faces[f].clip(a, b, false);
        faces[f] = left;
        faces.push(right);
    }
    let mut creases = vec![];
    for c in 0..p.chords.len() {
        let (a, b) = p.chord_points(c);
        let mid = a.lerp(b, 0.5);
        // the two faces with the chord midpoint on their boundary
        let find = |left: bool| {
            (0..faces.len())
                .filter(|&f| (orient(a, b, faces[f].centroid()) > 0.0) == left)
                .min_by(|&f, &g| {
                    boundary_dist(&faces[f], mid).total_cmp(&boundary_dist(&faces[g], mid))
                })
                .expect("both sides of a chord lie in faces")
        };
        creases.push(SheetCrease {
            faces: (find(true), find(false)),
            a,
            b,
        });
    }
    let base = (0..faces.len())
        .max_by(|&x, &y| faces[x].area().total_cmp(&faces[y].area()).then(y.cmp(&x)))
        .unwrap_or(0);
    let mut isos: Vec<Option<Isometry2>> = vec![None; faces.len()];
    isos[base] = Some(Isometry2::identity());
    let mut queue = VecDeque::from([base]);
    while let Some(f) = queue.pop_front() {
        for cr in &creases {
            let g = match cr.faces {
                (x, y) if x == f => y,
                (y, x) if x == f => y,
                _ => continue,
            };
            if isos[g].is_none() {
                let r = Isometry2::reflection_through(cr.a, cr.b).expect("chords have length");
                isos[g] = Some(isos[f].unwrap().compose(&r));
                queue.push_back(g);
            }
        }
    }
    let sheet = FoldedSheet {
        faces: faces
            .into_iter()
            .zip(isos)
            .map(|(region, iso)| SheetFace {
                region,
                iso: iso.expect("chord faces form a tree"),
            })
            .collect(),
        creases,
    };
    Ok(OuterSheet { sheet, base })
}

/// A random valid pattern: `points` folding points at uniform boundary
/// parameters and up to `chords` non-crossing chords between them.
pub fn random_outer_pattern<R: Rng>(
    region: Region,
    points: usize,
    chords: usize,
    rng: &mut R,
) -> OuterPattern {
    let mut p = OuterPattern::new(region);
    while p.points.len() < points {
        let id = p.add_point_at(rng.gen::<f64>());
        if !p.validate().is_valid() {
            p.points.remove(&id);
        }
    }
    let ids: Vec<usize> = p.points.keys().copied().collect();
    for _ in 0..chords * 20 {
        if p.chords.len() >= chords || ids.len() < 2 {
            break;
        }
        let a = ids[rng.gen_range(0..ids.len())];
        let b = ids[rng.gen_range(0..ids.len())];
        p.chords.push((a, b));
        if !p.validate().is_valid() {
            p.chords.pop();
        }
    }
    p
}
