use serde::Serialize;

use super::{segments_cross, OuterError, OuterPattern};
use crate::geom::{reflect_across_line, Point2};

/// Side of a chord `a -> b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChordSide {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SafeReason {
    /// Both conditions hold for the given side.
    Safe { side: ChordSide },
    /// Neither side has distances from the endpoints monotone along its
    /// boundary.
    NotMonotone,
    /// Every monotone side reflects across a crease.
    ReflectionCrosses { side: ChordSide, crease: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SafeReport {
    pub chord: usize,
    pub safe: bool,
    pub reason: SafeReason,
}

/// Boundary of one side of chord `c`, walked from `a` to `b`.
pub(crate) fn side_boundary(p: &OuterPattern, c: usize, side: ChordSide) -> Vec<Point2> {
    let (ia, ib) = p.chords[c];
    let (ta, tb) = (p.param(ia), p.param(ib));
    let (pa, pb) = p.chord_points(c);
    let mut arc = match side {
        // the right side of a -> b is swept counter-clockwise from a to b
        ChordSide::Right => p.region.arc(ta, tb),
        ChordSide::Left => {
            let mut v = p.region.arc(tb, ta);
            v.reverse();
            v
        }
    };
    let n = arc.len();
    arc[0] = pa;
    arc[n - 1] = pb;
    arc
}

/// Distances from `a` never decrease and distances from `b` never increase
/// along the polyline. Squared distance is convex on each segment, so the
/// derivative at the right end of the segment decides.
pub(crate) fn is_monotone(path: &[Point2], eps: f64) -> bool {
    let (a, b) = (path[0], path[path.len() - 1]);
    path.windows(2).all(|w| {
        let step = w[1] - w[0];
        let len = step.norm().max(1e-300);
        (w[0] - a).dot(step) / len >= -eps && (w[1] - b).dot(step) / len <= eps
    })
}

/// First crease (other than `c`) crossed by the reflection of `path`
/// across chord `c`.
pub(crate) fn reflection_hits(p: &OuterPattern, c: usize, path: &[Point2]) -> Option<usize> {
    let (a, b) = p.chord_points(c);
    let eps = p.eps();
    let image: Vec<Point2> = path
        .iter()
        .map(|&q| reflect_across_line(q, a, b).expect("chords have length"))
        .collect();
    (0..p.chords.len()).filter(|&d| d != c).find(|&d| {
        let (r, s) = p.chord_points(d);
        image.windows(2).any(|w| segments_cross(w[0], w[1], r, s, eps))
    })
}

pub(crate) fn is_safe_on(p: &OuterPattern, c: usize, side: ChordSide) -> bool {
    let path = side_boundary(p, c, side);
    is_monotone(&path, p.eps()) && reflection_hits(p, c, &path).is_none()
}

pub fn is_safe_crease(p: &OuterPattern, c: usize) -> Result<SafeReport, OuterError> {
    if c >= p.chords.len() {
        return Err(OuterError::UnknownChord(c));
    }
    let eps = p.eps();
    let mut reason = SafeReason::NotMonotone;
    for side in [ChordSide::Right, ChordSide::Left] {
        let path = side_boundary(p, c, side);
        if !is_monotone(&path, eps) {
            continue;
        }
        match reflection_hits(p, c, &path) {
            None => {
                return Ok(SafeReport {
                    chord: c,
                    safe: true,
                    reason: SafeReason::Safe { side },
                })
            }
            Some(crease) => {
                if reason == SafeReason::NotMonotone {
                    reason = SafeReason::ReflectionCrosses { side, crease };
                }
            }
        }
    }
    Ok(SafeReport {
        chord: c,
        safe: false,
        reason,
    })
}
