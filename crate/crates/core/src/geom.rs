//! Planar geometry kernel: points, turn angles, isometries, wedges, lunes and
//! convex polygon clipping.
//!
//! Directions are measured in turns (1 turn = 2π). Constructions emit exact
//! rational turns so angle sums can be compared to zero exactly; measured
//! directions fall back to radians compared with [`EPS_ANG`].

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Length tolerance in sheet units.
pub const EPS_LEN: f64 = 1e-9;
/// Angle tolerance in radians for measured (non-exact) angles.
pub const EPS_ANG: f64 = 1e-9;

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate line: endpoints coincide")]
    DegenerateLine,
    #[error("duplicate direction {0}")]
    DuplicateDirection(TurnAngle),
    #[error("non-finite coordinate")]
    NonFinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn scale(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }

    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        self + (other - self).scale(t)
    }

    pub fn approx_eq(self, other: Point2, eps: f64) -> bool {
        self.dist(other) <= eps
    }

    /// Unit vector pointing in direction `dir`.
    pub fn unit(dir: TurnAngle) -> Point2 {
        let (s, c) = dir.radians().sin_cos();
        Point2::new(c, s)
    }

    /// Direction of this vector; exact for axis-aligned vectors.
    pub fn direction(self) -> TurnAngle {
        TurnAngle::from_radians(self.y.atan2(self.x))
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Signed area test: positive when `c` lies left of the directed line `a -> b`.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

/// An angle measured in full turns.
///
/// `Exact` values are reduced rationals in `[0, 1)`; `Radians` values are
/// measured angles normalized to `[0, 2π)`.
#[derive(Clone, Copy, Debug)]
pub enum TurnAngle {
    Exact(Rational),
    Radians(f64),
}

impl TurnAngle {
    pub const ZERO: TurnAngle = TurnAngle::Exact(Ratio::new_raw(0, 1));

    pub fn turns(num: i64, den: i64) -> Self {
        TurnAngle::Exact(Ratio::new(num, den)).normalized()
    }

    pub fn from_ratio(r: Rational) -> Self {
        TurnAngle::Exact(r).normalized()
    }

    /// A measured angle in radians. Values within [`EPS_ANG`] of a multiple
    /// of a quarter turn are snapped to the exact quarter.
    pub fn from_radians(rad: f64) -> Self {
        let r = rad.rem_euclid(TAU);
        let quarters = r / (PI / 2.0);
        let k = quarters.round();
        if (quarters - k).abs() * (PI / 2.0) < EPS_ANG {
            return TurnAngle::turns(k as i64, 4);
        }
        TurnAngle::Radians(r)
    }

    fn normalized(self) -> Self {
        match self {
            TurnAngle::Exact(r) => {
                let floor = r.floor();
                TurnAngle::Exact(r - floor)
            }
            TurnAngle::Radians(x) => {
                let mut y = x.rem_euclid(TAU);
                if y >= TAU {
                    y = 0.0;
                }
                TurnAngle::Radians(y)
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, TurnAngle::Exact(_))
    }

    pub fn exact(&self) -> Option<Rational> {
        match *self {
            TurnAngle::Exact(r) => Some(r),
            TurnAngle::Radians(_) => None,
        }
    }

    pub fn radians(&self) -> f64 {
        match *self {
            TurnAngle::Exact(r) => *r.numer() as f64 / *r.denom() as f64 * TAU,
            TurnAngle::Radians(x) => x,
        }
    }

    pub fn as_turns_f64(&self) -> f64 {
        self.radians() / TAU
    }

    /// Unnormalized sum; callers that need `[0, 1)` use `+`.
    fn raw_add(self, other: TurnAngle, sign: i64) -> TurnAngle {
        match (self, other) {
            (TurnAngle::Exact(a), TurnAngle::Exact(b)) => TurnAngle::Exact(a + b * sign),
            (a, b) => TurnAngle::Radians(a.radians() + b.radians() * sign as f64),
        }
    }

    /// Counter-clockwise sweep from `self` to `other`, in `[0, 1)` turns.
    pub fn ccw_to(self, other: TurnAngle) -> TurnAngle {
        other - self
    }

    pub fn half(self) -> TurnAngle {
        match self {
            TurnAngle::Exact(a) => TurnAngle::Exact(a / 2),
            TurnAngle::Radians(x) => TurnAngle::Radians(x / 2.0),
        }
    }

    pub fn mul_int(self, k: i64) -> TurnAngle {
        match self {
            TurnAngle::Exact(a) => TurnAngle::Exact(a * k).normalized(),
            TurnAngle::Radians(x) => TurnAngle::Radians(x * k as f64).normalized(),
        }
    }

    pub fn div_int(self, k: i64) -> TurnAngle {
        match self {
            TurnAngle::Exact(a) => TurnAngle::Exact(a / k),
            TurnAngle::Radians(x) => TurnAngle::Radians(x / k as f64),
        }
    }

    /// Whether the angle is zero (exactly, or within [`EPS_ANG`] of a full turn).
    pub fn is_zero(&self) -> bool {
        match *self {
            TurnAngle::Exact(r) => r.is_zero(),
            TurnAngle::Radians(x) => x < EPS_ANG || TAU - x < EPS_ANG,
        }
    }

    /// Exact comparison when both are exact, tolerance otherwise.
    pub fn approx_eq(&self, other: &TurnAngle) -> bool {
        (*self - *other).is_zero()
    }

    /// Strictly less than half a turn.
    pub fn lt_half(&self) -> bool {
        match *self {
            TurnAngle::Exact(r) => r < Ratio::new(1, 2),
            TurnAngle::Radians(x) => x < PI - EPS_ANG,
        }
    }

    /// Total order on the normalized representative. Exact pairs compare
    /// exactly; mixed pairs compare radians.
    pub fn cmp_value(&self, other: &TurnAngle) -> Ordering {
        match (self, other) {
            (TurnAngle::Exact(a), TurnAngle::Exact(b)) => a.cmp(b),
            (a, b) => a.radians().total_cmp(&b.radians()),
        }
    }

    /// Sum of a list of angles without normalization, in turns.
    pub fn sum_raw(items: &[TurnAngle]) -> TurnAngle {
        items
            .iter()
            .fold(TurnAngle::ZERO, |acc, a| acc.raw_add(*a, 1))
    }

    /// Alternating sum `a0 - a1 + a2 - ...` without normalization.
    pub fn alternating_sum(items: &[TurnAngle]) -> TurnAngle {
        items.iter().enumerate().fold(TurnAngle::ZERO, |acc, (i, a)| {
            acc.raw_add(*a, if i % 2 == 0 { 1 } else { -1 })
        })
    }

    /// True when the unnormalized value is zero.
    pub fn raw_is_zero(&self) -> bool {
        match *self {
            TurnAngle::Exact(r) => r.is_zero(),
            TurnAngle::Radians(x) => x.abs() < EPS_ANG,
        }
    }

    /// The unnormalized value in radians (for reporting sums).
    pub fn raw_radians(&self) -> f64 {
        match *self {
            TurnAngle::Exact(r) => *r.numer() as f64 / *r.denom() as f64 * TAU,
            TurnAngle::Radians(x) => x,
        }
    }

    /// Parse `"p/q turn"`, `"p turn"` or `"<x> rad"`.
    pub fn parse(s: &str) -> Option<TurnAngle> {
        let s = s.trim();
        if let Some(body) = s.strip_suffix("turn") {
            let body = body.trim();
            let r = match body.split_once('/') {
                Some((p, q)) => {
                    let q: i64 = q.trim().parse().ok()?;
                    if q == 0 {
                        return None;
                    }
                    Ratio::new(p.trim().parse().ok()?, q)
                }
                None => Ratio::from_integer(body.parse().ok()?),
            };
            Some(TurnAngle::from_ratio(r))
        } else if let Some(body) = s.strip_suffix("rad") {
            let x: f64 = body.trim().parse().ok()?;
            x.is_finite().then(|| TurnAngle::Radians(x).normalized())
        } else {
            None
        }
    }
}

impl fmt::Display for TurnAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TurnAngle::Exact(r) if r.is_integer() => write!(f, "{} turn", r.numer()),
            TurnAngle::Exact(r) => write!(f, "{}/{} turn", r.numer(), r.denom()),
            TurnAngle::Radians(x) => write!(f, "{x} rad"),
        }
    }
}

impl PartialEq for TurnAngle {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (TurnAngle::Exact(a), TurnAngle::Exact(b)) => a == b,
            (TurnAngle::Radians(a), TurnAngle::Radians(b)) => a == b,
            _ => false,
        }
    }
}

impl Add for TurnAngle {
    type Output = TurnAngle;
    fn add(self, o: TurnAngle) -> TurnAngle {
        self.raw_add(o, 1).normalized()
    }
}

impl Sub for TurnAngle {
    type Output = TurnAngle;
    fn sub(self, o: TurnAngle) -> TurnAngle {
        self.raw_add(o, -1).normalized()
    }
}

impl Neg for TurnAngle {
    type Output = TurnAngle;
    fn neg(self) -> TurnAngle {
        TurnAngle::ZERO - self
    }
}

impl Serialize for TurnAngle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TurnAngle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        TurnAngle::parse(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("bad angle {s:?}")))
    }
}

/// Sorted cyclic gaps between pairwise distinct directions.
///
/// The `i`-th gap is the ccw sweep from the `i`-th smallest direction to
/// the next one; the gaps sum to one full turn.
pub fn cyclic_gaps(dirs: &[TurnAngle]) -> Result<Vec<TurnAngle>, GeomError> {
    let mut sorted = dirs.to_vec();
    sorted.sort_by(|a, b| a.cmp_value(b));
    for w in sorted.windows(2) {
        if w[0].approx_eq(&w[1]) {
            return Err(GeomError::DuplicateDirection(w[1]));
        }
    }
    if sorted.len() >= 2 && sorted[0].approx_eq(&sorted[sorted.len() - 1]) {
        return Err(GeomError::DuplicateDirection(sorted[0]));
    }
    let n = sorted.len();
    Ok(match n {
        0 => vec![],
        // a lone direction leaves one unnormalized full-turn gap
        1 => vec![TurnAngle::Exact(Ratio::one())],
        _ => (0..n).map(|i| sorted[(i + 1) % n] - sorted[i]).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Preserving => Orientation::Reversing,
            Orientation::Reversing => Orientation::Preserving,
        }
    }

    pub fn is_reversing(self) -> bool {
        self == Orientation::Reversing
    }
}

impl Mul for Orientation {
    type Output = Orientation;
    fn mul(self, o: Orientation) -> Orientation {
        if self == o {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }
}

/// A planar isometry `p ↦ R(rotation) · S · p + translation`, where `S` is
/// the reflection across the x-axis when the orientation is reversing and
/// the identity otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Isometry2 {
    pub orientation: Orientation,
    pub rotation: TurnAngle,
    pub translation: Point2,
}

impl Isometry2 {
    pub fn identity() -> Self {
        Isometry2 {
            orientation: Orientation::Preserving,
            rotation: TurnAngle::ZERO,
            translation: Point2::ORIGIN,
        }
    }

    pub fn rotation_about(center: Point2, angle: TurnAngle) -> Self {
        let rot = Isometry2 {
            orientation: Orientation::Preserving,
            rotation: angle,
            translation: Point2::ORIGIN,
        };
        Isometry2 {
            translation: center - rot.linear(center),
            ..rot
        }
    }

    pub fn translation(v: Point2) -> Self {
        Isometry2 {
            translation: v,
            ..Isometry2::identity()
        }
    }

    /// Reflection across the line through `origin` with direction `dir`.
    pub fn reflection(origin: Point2, dir: TurnAngle) -> Self {
        let linear_only = Isometry2 {
            orientation: Orientation::Reversing,
            rotation: dir.mul_int(2),
            translation: Point2::ORIGIN,
        };
        Isometry2 {
            translation: origin - linear_only.linear(origin),
            ..linear_only
        }
    }

    /// Reflection across the line through `a` and `b`.
    pub fn reflection_through(a: Point2, b: Point2) -> Result<Self, GeomError> {
        if a.dist(b) <= EPS_LEN {
            return Err(GeomError::DegenerateLine);
        }
        Ok(Isometry2::reflection(a, (b - a).direction()))
    }

    fn linear(&self, p: Point2) -> Point2 {
        let q = match self.orientation {
            Orientation::Preserving => p,
            Orientation::Reversing => Point2::new(p.x, -p.y),
        };
        let (s, c) = self.rotation.radians().sin_cos();
        Point2::new(c * q.x - s * q.y, s * q.x + c * q.y)
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        self.linear(p) + self.translation
    }

    /// Image of a direction (for rays and crease lines).
    pub fn apply_dir(&self, dir: TurnAngle) -> TurnAngle {
        match self.orientation {
            Orientation::Preserving => self.rotation + dir,
            Orientation::Reversing => self.rotation - dir,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry2) -> Isometry2 {
        let rotation = match self.orientation {
            Orientation::Preserving => self.rotation + other.rotation,
            Orientation::Reversing => self.rotation - other.rotation,
        };
        Isometry2 {
            orientation: self.orientation * other.orientation,
            rotation,
            translation: self.linear(other.translation) + self.translation,
        }
    }

    pub fn inverse(&self) -> Isometry2 {
        let rotation = match self.orientation {
            Orientation::Preserving => -self.rotation,
            Orientation::Reversing => self.rotation,
        };
        let lin = Isometry2 {
            orientation: self.orientation,
            rotation,
            translation: Point2::ORIGIN,
        };
        Isometry2 {
            translation: -lin.linear(self.translation),
            ..lin
        }
    }

    /// Equality up to the rotation/length tolerances (exact rotation
    /// comparison when both rotations are exact).
    pub fn approx_eq(&self, other: &Isometry2) -> bool {
        self.orientation == other.orientation
            && self.rotation.approx_eq(&other.rotation)
            && self.translation.approx_eq(other.translation, 1e3 * EPS_LEN)
    }

    pub fn is_identity(&self) -> bool {
        self.approx_eq(&Isometry2::identity())
    }
}

/// Mirror image of `p` across the line through `a` and `b`.
pub fn reflect_across_line(p: Point2, a: Point2, b: Point2) -> Result<Point2, GeomError> {
    if a.dist(b) <= EPS_LEN {
        return Err(GeomError::DegenerateLine);
    }
    let d = b - a;
    let t = (p - a).dot(d) / d.dot(d);
    let foot = a + d.scale(t);
    Ok(foot.scale(2.0) - p)
}

pub fn compose(a: &Isometry2, b: &Isometry2) -> Isometry2 {
    a.compose(b)
}

/// A convex angular region with apex `apex`, spanning `opening` turns ccw
/// from `start_dir`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Wedge {
    pub apex: Point2,
    pub start_dir: TurnAngle,
    pub opening: TurnAngle,
}

impl Wedge {
    /// The wedge of the given opening centred on `median`.
    pub fn centered(apex: Point2, median: TurnAngle, opening: TurnAngle) -> Wedge {
        Wedge {
            apex,
            start_dir: median - opening.half(),
            opening,
        }
    }

    pub fn end_dir(&self) -> TurnAngle {
        self.start_dir + self.opening
    }

    pub fn median(&self) -> TurnAngle {
        self.start_dir + self.opening.half()
    }

    /// Whether `dir` lies strictly inside the angular range.
    pub fn contains_dir_strict(&self, dir: TurnAngle) -> bool {
        let off = self.start_dir.ccw_to(dir);
        !off.is_zero() && off.cmp_value(&self.opening) == Ordering::Less && !off.approx_eq(&self.opening)
    }

    /// The wedge clipped to a square of half-size `r` about the origin.
    pub fn clipped(&self, r: f64) -> ConvexPolygon {
        let big = ConvexPolygon::square(r);
        let a = Point2::unit(self.start_dir);
        let b = Point2::unit(self.end_dir());
        big.clip(self.apex, self.apex + a, true)
            .clip(self.apex + b, self.apex, true)
    }

    /// Whether the interiors of two wedges (opening < 1/2 turn) are disjoint.
    pub fn interior_disjoint(&self, other: &Wedge) -> bool {
        let r = 100.0 * (1.0 + self.apex.norm().max(other.apex.norm()));
        let a = self.clipped(r);
        let b = other.clipped(r);
        a.intersect(&b).area() <= 1e-9
    }

    /// Whether the open segment `p q` meets the interior of the wedge.
    pub fn segment_meets_interior(&self, p: Point2, q: Point2) -> bool {
        let a = self.apex + Point2::unit(self.start_dir);
        let b = self.apex + Point2::unit(self.end_dir());
        clip_segment(p, q, &[(self.apex, a), (b, self.apex)], 1e-9)
            .map(|(s, t)| s.dist(t) > 1e-9)
            .unwrap_or(false)
    }
}

/// Two disks about `u` and `v` through the common point `q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lune {
    pub u: Point2,
    pub v: Point2,
    pub q: Point2,
}

pub fn lune_contains(l: &Lune, p: Point2) -> bool {
    l.u.dist(p) <= l.u.dist(l.q) + EPS_LEN && l.v.dist(p) <= l.v.dist(l.q) + EPS_LEN
}

/// Clip the segment `p q` to the intersection of the open half-planes left
/// of each directed line, shrunk by `eps`. Returns the surviving piece.
pub fn clip_segment(
    p: Point2,
    q: Point2,
    lines: &[(Point2, Point2)],
    eps: f64,
) -> Option<(Point2, Point2)> {
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for &(a, b) in lines {
        let len = a.dist(b);
        if len == 0.0 {
            continue;
        }
        let fp = orient(a, b, p) / len - eps;
        let fq = orient(a, b, q) / len - eps;
        if fp <= 0.0 && fq <= 0.0 {
            return None;
        }
        if fp < 0.0 {
            t0 = t0.max(fp / (fp - fq));
        } else if fq < 0.0 {
            t1 = t1.min(fp / (fp - fq));
        }
        if t0 >= t1 {
            return None;
        }
    }
    Some((p.lerp(q, t0), p.lerp(q, t1)))
}

/// A convex polygon with counter-clockwise vertices.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct ConvexPolygon {
    pub pts: Vec<Point2>,
}

impl ConvexPolygon {
    pub fn new(pts: Vec<Point2>) -> Self {
        ConvexPolygon { pts }
    }

    pub fn square(r: f64) -> Self {
        ConvexPolygon::new(vec![
            Point2::new(-r, -r),
            Point2::new(r, -r),
            Point2::new(r, r),
            Point2::new(-r, r),
        ])
    }

    pub fn is_empty(&self) -> bool {
        self.pts.len() < 3
    }

    pub fn area(&self) -> f64 {
        let n = self.pts.len();
        if n < 3 {
            return 0.0;
        }
        0.5 * (0..n)
            .map(|i| self.pts[i].cross(self.pts[(i + 1) % n]))
            .sum::<f64>()
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.pts.len();
        let a = self.area();
        if n < 3 || a.abs() < 1e-300 {
            let s = self.pts.iter().fold(Point2::ORIGIN, |acc, p| acc + *p);
            return s.scale(1.0 / n.max(1) as f64);
        }
        let mut c = Point2::ORIGIN;
        for i in 0..n {
            let p = self.pts[i];
            let q = self.pts[(i + 1) % n];
            let w = p.cross(q);
            c = c + (p + q).scale(w);
        }
        c.scale(1.0 / (6.0 * a))
    }

    /// Keep the part left of `a -> b` (or right when `keep_left` is false).
    pub fn clip(&self, a: Point2, b: Point2, keep_left: bool) -> ConvexPolygon {
        let n = self.pts.len();
        if n == 0 {
            return self.clone();
        }
        let len = a.dist(b).max(1e-300);
        let side = |p: Point2| {
            let s = orient(a, b, p) / len;
            if keep_left {
                s
            } else {
                -s
            }
        };
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let p = self.pts[i];
            let q = self.pts[(i + 1) % n];
            let sp = side(p);
            let sq = side(q);
            if sp >= 0.0 {
                out.push(p);
            }
            if (sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0) {
                out.push(p.lerp(q, sp / (sp - sq)));
            }
        }
        dedup_ring(&mut out);
        ConvexPolygon::new(out)
    }

    pub fn intersect(&self, other: &ConvexPolygon) -> ConvexPolygon {
        let n = other.pts.len();
        let mut cur = self.clone();
        for i in 0..n {
            if cur.is_empty() {
                break;
            }
            cur = cur.clip(other.pts[i], other.pts[(i + 1) % n], true);
        }
        cur
    }

    pub fn transformed(&self, iso: &Isometry2) -> ConvexPolygon {
        let mut pts: Vec<Point2> = self.pts.iter().map(|p| iso.apply(*p)).collect();
        if iso.orientation.is_reversing() {
            pts.reverse();
        }
        ConvexPolygon::new(pts)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.pts.len();
        (0..n).map(move |i| (self.pts[i], self.pts[(i + 1) % n]))
    }

    /// Strict containment with margin `eps`.
    pub fn contains_strict(&self, p: Point2, eps: f64) -> bool {
        !self.is_empty()
            && self
                .edges()
                .all(|(a, b)| orient(a, b, p) / a.dist(b).max(1e-300) > eps)
    }
}

fn dedup_ring(pts: &mut Vec<Point2>) {
    pts.dedup_by(|a, b| a.dist(*b) < 1e-12);
    while pts.len() > 1 && pts[0].dist(pts[pts.len() - 1]) < 1e-12 {
        pts.pop();
    }
}

/// Rational helpers shared by the constructions.
pub fn ratio(num: i64, den: i64) -> Rational {
    Ratio::new(num, den)
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}
