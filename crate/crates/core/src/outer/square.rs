use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::disk::{alternate, path_order, wrap_path};
use super::safe::is_safe_on;
use super::{outer_sheet, ChordSide, OuterError, OuterPattern, OuterSheet, Region};
use crate::geom::{clip_segment, orient, ConvexPolygon, Isometry2, Point2};
use crate::layers::{plan_to_layering, FoldPlan, FoldStep, Sign};

/// Corner points are nudged this far (in side lengths) along the next side.
const NUDGE: f64 = 1e-3;

/// Which two sides of the (normalized) square a crease joins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CreaseType {
    LT,
    RT,
    LB,
    RB,
    LR,
    TB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Corner {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl Corner {
    fn kind(self) -> CreaseType {
        match self {
            Corner::TopLeft => CreaseType::LT,
            Corner::TopRight => CreaseType::RT,
            Corner::BottomLeft => CreaseType::LB,
            Corner::BottomRight => CreaseType::RB,
        }
    }

    fn point(self) -> Point2 {
        match self {
            Corner::TopLeft => Point2::new(0.0, 1.0),
            Corner::TopRight => Point2::new(1.0, 1.0),
            Corner::BottomLeft => Point2::new(0.0, 0.0),
            Corner::BottomRight => Point2::new(1.0, 0.0),
        }
    }
}

/// How the input was normalized: the square is mapped onto `[0, 1]^2`
/// with its first corner at the origin, then turned a quarter turn when
/// that removes top-to-bottom creases.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquareFrame {
    pub quarter_turns: u8,
    /// Points that sat on a corner and were nudged along the next side.
    pub nudged: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareCase {
    NoSemiSafe,
    Single,
    Independent,
    BottomFirst,
    TopFirst,
    Crossed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquarePlan {
    pub frame: SquareFrame,
    pub labels: Vec<CreaseType>,
    /// Corners pleated first because their outermost crease is safe.
    pub safe_corners: Vec<Corner>,
    /// Semi-safe corners with their outermost crease and starting sign.
    pub semi_safe: Vec<(Corner, usize, Sign)>,
    pub case: SquareCase,
    pub plan: FoldPlan,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

/// Normalized coordinates of every folding point.
fn normalize(p: &OuterPattern) -> Result<(BTreeMap<usize, Point2>, SquareFrame), OuterError> {
    let not_square = OuterError::WrongRegion("square");
    let Region::Polygon { corners } = &p.region else {
        return Err(not_square);
    };
    if corners.len() != 4 {
        return Err(not_square);
    }
    let s = corners[0].dist(corners[1]);
    let tol = 1e-9 * s.max(1.0);
    let sides_ok = (0..4).all(|i| (corners[i].dist(corners[(i + 1) % 4]) - s).abs() < tol);
    let diag_ok = (corners[0].dist(corners[2]) - corners[1].dist(corners[3])).abs() < tol;
    if !sides_ok || !diag_ok {
        return Err(not_square);
    }
    let e1 = (corners[1] - corners[0]).scale(1.0 / s);
    let e2 = Point2::new(-e1.y, e1.x);
    let mut nudged = vec![];
    let mut pts = BTreeMap::new();
    for (&id, &q) in &p.points {
        let d = q - corners[0];
        let mut x = Point2::new(d.dot(e1) / s, d.dot(e2) / s);
        let at = |cx: f64, cy: f64| (x.x - cx).abs() < 1e-9 && (x.y - cy).abs() < 1e-9;
        let moved = if at(0.0, 0.0) {
            Some(Point2::new(NUDGE, 0.0))
        } else if at(1.0, 0.0) {
            Some(Point2::new(1.0, NUDGE))
        } else if at(1.0, 1.0) {
            Some(Point2::new(1.0 - NUDGE, 1.0))
        } else if at(0.0, 1.0) {
            Some(Point2::new(0.0, 1.0 - NUDGE))
        } else {
            None
        };
        if let Some(m) = moved {
            x = m;
            nudged.push(id);
        }
        pts.insert(id, x);
    }
    Ok((pts, SquareFrame { quarter_turns: 0, nudged }))
}

fn side_of(x: Point2) -> Side {
    const E: f64 = 1e-7;
    if x.y < E {
        Side::Bottom
    } else if x.x > 1.0 - E {
        Side::Right
    } else if x.y > 1.0 - E {
        Side::Top
    } else {
        Side::Left
    }
}

fn classify(a: Side, b: Side) -> CreaseType {
    use Side::*;
    match (a, b) {
        (Left, Top) | (Top, Left) => CreaseType::LT,
        (Right, Top) | (Top, Right) => CreaseType::RT,
        (Left, Bottom) | (Bottom, Left) => CreaseType::LB,
        (Right, Bottom) | (Bottom, Right) => CreaseType::RB,
        (Left, Right) | (Right, Left) => CreaseType::LR,
        _ => CreaseType::TB,
    }
}

struct Square<'a> {
    p: &'a OuterPattern,
    os: OuterSheet,
    pts: BTreeMap<usize, Point2>,
    labels: Vec<CreaseType>,
}

impl Square<'_> {
    fn ends(&self, c: usize) -> (Point2, Point2) {
        let (a, b) = self.p.chords[c];
        (self.pts[&a], self.pts[&b])
    }

    /// Creases of a corner, innermost first.
    fn chain(&self, k: Corner) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.labels.len())
            .filter(|&c| self.labels[c] == k.kind())
            .collect();
        let key = |c: usize| {
            let (a, b) = self.ends(c);
            a.dist(k.point()) + b.dist(k.point())
        };
        v.sort_by(|&x, &y| key(x).total_cmp(&key(y)));
        v
    }

    /// Height of the endpoint of `c` on the left or right side.
    fn side_height(&self, c: usize) -> f64 {
        let (a, b) = self.ends(c);
        if matches!(side_of(a), Side::Left | Side::Right) {
            a.y
        } else {
            b.y
        }
    }

    fn corner_side(&self, c: usize, k: Corner) -> ChordSide {
        let (a, b) = self.ends(c);
        if orient(a, b, k.point()) > 0.0 {
            ChordSide::Left
        } else {
            ChordSide::Right
        }
    }

    /// Face across the corner's outermost crease from the corner.
    fn host(&self, c: usize, k: Corner) -> usize {
        let (l, r) = self.os.chord_faces(c);
        match self.corner_side(c, k) {
            ChordSide::Left => r,
            ChordSide::Right => l,
        }
    }

    fn safe(&self, c: usize, k: Corner) -> bool {
        is_safe_on(self.p, c, self.corner_side(c, k))
    }

    /// Creases crossed by the corner beyond `c` once reflected across `c`.
    fn interferes(&self, c: usize, k: Corner) -> BTreeSet<usize> {
        let (a, b) = self.ends(c);
        let keep_left = self.corner_side(c, k) == ChordSide::Left;
        let square = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ]);
        let flap = square.clip(a, b, keep_left);
        let image = flap.transformed(&Isometry2::reflection_through(a, b).expect("chord length"));
        let lines: Vec<(Point2, Point2)> = image.edges().collect();
        (0..self.labels.len())
            .filter(|&d| d != c)
            .filter(|&d| {
                let (r, s) = self.ends(d);
                clip_segment(r, s, &lines, 1e-9).is_some_and(|(x, y)| x.dist(y) > 1e-9)
            })
            .collect()
    }
}

/// Pleat a corner from its tip: innermost crease first, the outermost one
/// (carrying the whole corner) last with sign `outer`.
fn corner_steps(sq: &Square, chain: &[usize], k: Corner, outer: Sign) -> Vec<FoldStep> {
    let n = chain.len();
    let mut out = vec![];
    for i in 0..n {
        let c = chain[i];
        let host = sq.host(c, k);
        let (l, r) = sq.os.chord_faces(c);
        let mover = if l == host { r } else { l };
        let sign = if (n - 1 - i) % 2 == 0 { outer } else { outer.flip() };
        out.push(FoldStep::Wrap { crease: c, mover, sign });
    }
    out
}

/// Outer global folding of a square, following the semi-safe case
/// analysis. The plan is checked before it is returned.
pub fn square_fold_plan(p: &OuterPattern) -> Result<SquarePlan, OuterError> {
    let (mut pts, mut frame) = normalize(p)?;
    let os = outer_sheet(p)?;
    let kinds = |pts: &BTreeMap<usize, Point2>| -> Vec<CreaseType> {
        p.chords
            .iter()
            .map(|(a, b)| classify(side_of(pts[a]), side_of(pts[b])))
            .collect()
    };
    let mut labels = kinds(&pts);
    if labels.contains(&CreaseType::TB) {
        if labels.contains(&CreaseType::LR) {
            return Err(OuterError::BothCrossTypes);
        }
        for x in pts.values_mut() {
            *x = Point2::new(1.0 - x.y, x.x);
        }
        frame.quarter_turns = 1;
        labels = kinds(&pts);
    }
    let sq = Square { p, os, pts, labels };

    let mut plan = FoldPlan::default();
    let mut safe_corners = vec![];
    let mut semi: Vec<(Corner, usize)> = vec![];
    let mut removed: BTreeSet<usize> = BTreeSet::new();
    for (left, right, top) in [
        (Corner::TopLeft, Corner::TopRight, true),
        (Corner::BottomLeft, Corner::BottomRight, false),
    ] {
        let (cl, cr) = (sq.chain(left), sq.chain(right));
        let (Some(&ol), Some(&or)) = (cl.last(), cr.last()) else {
            continue;
        };
        if let Some((k, chain)) = [(left, &cl), (right, &cr)]
            .into_iter()
            .find(|(k, chain)| sq.safe(*chain.last().unwrap(), *k))
        {
            plan.steps.extend(corner_steps(&sq, chain, k, Sign::Valley));
            removed.extend(chain.iter().copied());
            safe_corners.push(k);
            continue;
        }
        // the corner whose side endpoint is nearer its own horizontal side
        let (hl, hr) = (sq.side_height(ol), sq.side_height(or));
        let right_wins = if top { hr >= hl } else { hr <= hl };
        semi.push(if right_wins { (right, or) } else { (left, ol) });
    }
    for &(k, _) in &semi {
        removed.extend(sq.chain(k));
    }
    let rest: BTreeSet<usize> = (0..sq.labels.len()).filter(|c| !removed.contains(c)).collect();
    let (faces, creases) = if rest.is_empty() {
        (vec![], vec![])
    } else {
        path_order(&sq.os, &rest).ok_or(OuterError::NoSafeCrease(0))?
    };
    let signed = alternate(&creases, Sign::Valley);
    let sign_of: BTreeMap<usize, Sign> = signed.iter().copied().collect();

    // sign opposite to the nearest pleat crease the corner runs into
    let single = |k: Corner, c: usize| -> Sign {
        let hits = sq.interferes(c, k);
        let Some(h) = faces.iter().position(|&f| f == sq.host(c, k)) else {
            return Sign::Valley;
        };
        creases
            .iter()
            .enumerate()
            .filter(|(_, d)| hits.contains(d))
            .min_by_key(|(i, _)| if *i >= h { i - h } else { h - 1 - i })
            .map_or(Sign::Valley, |(_, d)| sign_of[d].flip())
    };
    let other_outer = |k: Corner| -> Sign {
        let other = match k {
            Corner::TopLeft => Corner::TopRight,
            Corner::TopRight => Corner::TopLeft,
            Corner::BottomLeft => Corner::BottomRight,
            Corner::BottomRight => Corner::BottomLeft,
        };
        sq.chain(other).last().map_or(Sign::Valley, |d| sign_of[d])
    };

    let (case, order): (SquareCase, Vec<(Corner, usize, Sign)>) = match semi.as_slice() {
        [] => (SquareCase::NoSemiSafe, vec![]),
        [(k, c)] => (SquareCase::Single, vec![(*k, *c, single(*k, *c))]),
        [(kt, ct), (kb, cb)] => {
            let (top_hits, bottom_hits) = (sq.interferes(*ct, *kt), sq.interferes(*cb, *kb));
            let in_corners = |hits: &BTreeSet<usize>, top: bool| {
                hits.iter().all(|&d| match sq.labels[d] {
                    CreaseType::LT | CreaseType::RT => top,
                    CreaseType::LB | CreaseType::RB => !top,
                    _ => false,
                })
            };
            let separated = sq.host(*ct, *kt) != sq.host(*cb, *kb);
            let own_only = |hits: &BTreeSet<usize>, k: Corner| {
                let other: BTreeSet<usize> = sq.chain(match k {
                    Corner::TopLeft => Corner::TopRight,
                    Corner::TopRight => Corner::TopLeft,
                    Corner::BottomLeft => Corner::BottomRight,
                    Corner::BottomRight => Corner::BottomLeft,
                }).into_iter().collect();
                hits.is_subset(&other)
            };
            if separated || (own_only(&top_hits, *kt) && own_only(&bottom_hits, *kb)) {
                (
                    SquareCase::Independent,
                    vec![(*kt, *ct, single(*kt, *ct)), (*kb, *cb, single(*kb, *cb))],
                )
            } else if !in_corners(&top_hits, true) && own_only(&bottom_hits, *kb) {
                let s = other_outer(*kb).flip();
                (SquareCase::BottomFirst, vec![(*kb, *cb, s), (*kt, *ct, s)])
            } else if !in_corners(&bottom_hits, false) && own_only(&top_hits, *kt) {
                let s = other_outer(*kt).flip();
                (SquareCase::TopFirst, vec![(*kt, *ct, s), (*kb, *cb, s)])
            } else {
                (
                    SquareCase::Crossed,
                    vec![(*kt, *ct, other_outer(*kt)), (*kb, *cb, other_outer(*kb))],
                )
            }
        }
        _ => unreachable!("at most one semi-safe corner per pair"),
    };
    for &(k, _, s) in &order {
        plan.steps.extend(corner_steps(&sq, &sq.chain(k), k, s));
    }
    plan.steps.extend(wrap_path(&faces, &signed));
    plan_to_layering(&plan, &sq.os.sheet)?;
    Ok(SquarePlan {
        frame,
        labels: sq.labels.clone(),
        safe_corners,
        semi_safe: order,
        case,
        plan,
    })
}
