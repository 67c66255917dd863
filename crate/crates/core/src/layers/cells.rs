use std::collections::BTreeSet;

use serde::Serialize;

use super::LayerViolation;
use crate::geom::{orient, ConvexPolygon, Point2};
use crate::sheet::FoldedSheet;

const AREA_EPS: f64 = 1e-9;
const PT_EPS: f64 = 1e-9;
const LINE_EPS: f64 = 1e-7;

/// A convex piece of the arrangement of face-image boundaries, with the
/// faces whose images cover it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub polygon: ConvexPolygon,
    pub faces: Vec<usize>,
}

fn ccw(mut p: ConvexPolygon) -> ConvexPolygon {
    if p.area() < 0.0 {
        p.pts.reverse();
    }
    p
}

pub fn overlay_cells(sheet: &FoldedSheet) -> Vec<Cell> {
    let images: Vec<ConvexPolygon> = (0..sheet.faces.len()).map(|f| ccw(sheet.image(f))).collect();
    let r = images
        .iter()
        .flat_map(|p| p.pts.iter())
        .fold(1.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs()))
        * 2.0;
    let mut cells = vec![(ConvexPolygon::square(r), Vec::<usize>::new())];
    for (f, img) in images.iter().enumerate() {
        if img.area() <= AREA_EPS {
            continue;
        }
        let mut next = Vec::with_capacity(cells.len() * 2);
        for (poly, cover) in cells {
            let inside = poly.intersect(img);
            if inside.area() <= AREA_EPS {
                next.push((poly, cover));
                continue;
            }
            let mut rest = poly;
            for (a, b) in img.edges() {
                let out = rest.clip(a, b, false);
                if out.area() > AREA_EPS {
                    next.push((out, cover.clone()));
                }
                rest = rest.clip(a, b, true);
                if rest.area() <= AREA_EPS {
                    break;
                }
            }
            let mut c = cover;
            c.push(f);
            next.push((inside, c));
        }
        cells = next;
    }
    cells
        .into_iter()
        .filter(|(_, c)| !c.is_empty())
        .map(|(polygon, faces)| Cell { polygon, faces })
        .collect()
}

/// One local condition on the stacking order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Constraint {
    /// The three faces share a cell and must not form a cycle.
    NoCycle { faces: [usize; 3] },
    /// Face `h` covers the image of the crease joining `f` and `g`, so it
    /// cannot sit between them.
    NotBetween { crease: usize, f: usize, g: usize, h: usize },
    /// Two folded creases share a stretch of image on the same side; their
    /// face pairs must nest or stay apart.
    NotInterleaved { creases: [usize; 2], outer: (usize, usize), inner: (usize, usize) },
}

type Below<'a> = &'a dyn Fn(usize, usize) -> Option<bool>;

fn between(below: Below, f: usize, g: usize, h: usize) -> Option<bool> {
    Some(below(f, h)? == below(h, g)?)
}

impl Constraint {
    /// `Some(true)` satisfied, `Some(false)` violated, `None` undecided.
    pub fn eval(&self, below: Below) -> Option<bool> {
        match *self {
            Constraint::NoCycle { faces: [a, b, c] } => {
                let (x, y, z) = (below(a, b), below(b, c), below(c, a));
                match (x, y, z) {
                    (Some(x), Some(y), Some(z)) => Some(!(x == y && y == z)),
                    _ => {
                        let known: Vec<bool> = [x, y, z].into_iter().flatten().collect();
                        if known.windows(2).any(|w| w[0] != w[1]) {
                            Some(true)
                        } else {
                            None
                        }
                    }
                }
            }
            Constraint::NotBetween { f, g, h, .. } => between(below, f, g, h).map(|b| !b),
            Constraint::NotInterleaved { outer: (f, g), inner: (p, q), .. } => {
                Some(between(below, f, g, p)? == between(below, f, g, q)?)
            }
        }
    }

    /// Face pairs the constraint reads, as `(min, max)`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let raw = match *self {
            Constraint::NoCycle { faces: [a, b, c] } => vec![(a, b), (b, c), (c, a)],
            Constraint::NotBetween { f, g, h, .. } => vec![(f, h), (h, g)],
            Constraint::NotInterleaved { outer: (f, g), inner: (p, q), .. } => {
                vec![(f, p), (p, g), (f, q), (q, g)]
            }
        };
        raw.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect()
    }

    pub fn violation(&self) -> LayerViolation {
        match *self {
            Constraint::NoCycle { faces } => LayerViolation::Cycle { faces },
            Constraint::NotBetween { crease, h, .. } => LayerViolation::TacoTortilla { crease, face: h },
            Constraint::NotInterleaved { creases, .. } => LayerViolation::TacoTaco { creases },
        }
    }
}

/// Overlapping pairs plus every constraint a layering must satisfy.
#[derive(Clone, Debug, Default)]
pub struct Constraints {
    pub pairs: BTreeSet<(usize, usize)>,
    pub list: Vec<Constraint>,
    pub cells: usize,
}

/// Parameters along `p q` where it crosses the boundary of `poly`.
fn crossings(p: Point2, q: Point2, poly: &ConvexPolygon, out: &mut Vec<f64>) {
    let d = q - p;
    for (a, b) in poly.edges() {
        let e = b - a;
        let den = d.cross(e);
        if den.abs() < 1e-15 {
            continue;
        }
        let t = (a - p).cross(e) / den;
        let s = (a - p).cross(d) / den;
        if (-1e-12..=1.0 + 1e-12).contains(&s) && t > 0.0 && t < 1.0 {
            out.push(t);
        }
    }
}

pub fn build_constraints(sheet: &FoldedSheet) -> Constraints {
    let cells = overlay_cells(sheet);
    let mut set = BTreeSet::new();
    let mut pairs = BTreeSet::new();
    let covers: BTreeSet<Vec<usize>> = cells
        .iter()
        .map(|c| {
            let mut f = c.faces.clone();
            f.sort_unstable();
            f
        })
        .collect();
    for cover in &covers {
        for i in 0..cover.len() {
            for j in i + 1..cover.len() {
                pairs.insert((cover[i], cover[j]));
                for k in j + 1..cover.len() {
                    set.insert(Constraint::NoCycle { faces: [cover[i], cover[j], cover[k]] });
                }
            }
        }
    }

    let images: Vec<ConvexPolygon> = (0..sheet.faces.len()).map(|f| ccw(sheet.image(f))).collect();
    let crease_imgs: Vec<(Point2, Point2)> = (0..sheet.creases.len()).map(|c| sheet.crease_image(c)).collect();
    for (c, &(p, q)) in crease_imgs.iter().enumerate() {
        let (f, g) = sheet.creases[c].faces;
        let mut ts = vec![0.0, 1.0];
        for img in &images {
            crossings(p, q, img, &mut ts);
        }
        ts.sort_by(f64::total_cmp);
        let len = p.dist(q);
        for w in ts.windows(2) {
            if (w[1] - w[0]) * len < PT_EPS {
                continue;
            }
            let m = p.lerp(q, 0.5 * (w[0] + w[1]));
            for (h, img) in images.iter().enumerate() {
                if h != f && h != g && img.contains_strict(m, PT_EPS) {
                    set.insert(Constraint::NotBetween { crease: c, f, g, h });
                }
            }
        }
    }

    let side = |f: usize, a: Point2, b: Point2| orient(a, b, images[f].centroid()) > 0.0;
    for c1 in 0..crease_imgs.len() {
        let (a, b) = crease_imgs[c1];
        let len = a.dist(b);
        if len < PT_EPS {
            continue;
        }
        let u = (b - a).scale(1.0 / len);
        for c2 in c1 + 1..crease_imgs.len() {
            let (p, q) = crease_imgs[c2];
            if (p - a).cross(u).abs() > LINE_EPS || (q - a).cross(u).abs() > LINE_EPS {
                continue;
            }
            let (s0, s1) = ((p - a).dot(u), (q - a).dot(u));
            if s0.max(s1).min(len) - s0.min(s1).max(0.0) <= LINE_EPS {
                continue;
            }
            let (f1, g1) = sheet.creases[c1].faces;
            let (f2, g2) = sheet.creases[c2].faces;
            let distinct: BTreeSet<usize> = [f1, g1, f2, g2].into_iter().collect();
            if distinct.len() < 4 || side(f1, a, b) != side(f2, a, b) {
                continue;
            }
            set.insert(Constraint::NotInterleaved {
                creases: [c1, c2],
                outer: (f1, g1),
                inner: (f2, g2),
            });
        }
    }

    let list: Vec<Constraint> = set.into_iter().collect();
    for c in &list {
        pairs.extend(c.pairs());
    }
    Constraints {
        pairs,
        list,
        cells: cells.len(),
    }
}
