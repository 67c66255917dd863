//! Local flat-foldability: Maekawa and Kawasaki conditions, face convexity,
//! and the fold map obtained by composing reflections across creases.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::geom::{clip_segment, cyclic_gaps, Isometry2, Point2, TurnAngle, EPS_LEN};
use crate::pattern::{
    build_faces, CreaseId, CreasePattern, FaceComplex, FaceId, Node, PatternError, VertexId,
};
use crate::sheet::{FoldedSheet, SheetCrease, SheetFace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FoldError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("vertex {0} has odd degree")]
    OddDegree(VertexId),
    #[error("not locally flat foldable at vertex {0}")]
    NotFlatFoldable(VertexId),
    #[error("unknown face {0}")]
    UnknownFace(FaceId),
    #[error("point {0} could not be located")]
    PointLocation(Point2),
}

/// Per-vertex outcome of a local check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexResult {
    pub vertex: VertexId,
    pub degree: usize,
    pub pass: bool,
    /// Check-specific detail (alternating sum, widest gap, ...).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<TurnAngle>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalReport {
    pub check: &'static str,
    pub vertices: Vec<VertexResult>,
}

impl LocalReport {
    pub fn pass(&self) -> bool {
        self.vertices.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> Vec<VertexId> {
        self.vertices
            .iter()
            .filter(|v| !v.pass)
            .map(|v| v.vertex)
            .collect()
    }
}

pub fn maekawa_check(p: &CreasePattern) -> LocalReport {
    let vertices = p
        .vertices
        .keys()
        .map(|&v| {
            let degree = p.degree(v);
            VertexResult {
                vertex: v,
                degree,
                pass: degree % 2 == 0,
                value: None,
            }
        })
        .collect();
    LocalReport {
        check: "maekawa",
        vertices,
    }
}

/// Alternating sum of the cyclic gaps at `v`, starting from the gap after
/// the smallest direction. Requires even degree.
pub fn alternating_gap_sum(p: &CreasePattern, v: VertexId) -> Result<TurnAngle, FoldError> {
    let dirs = p.directions_at(v);
    if dirs.len() % 2 == 1 {
        return Err(FoldError::OddDegree(v));
    }
    let gaps = cyclic_gaps(&dirs).map_err(|_| FoldError::NotFlatFoldable(v))?;
    Ok(TurnAngle::alternating_sum(&gaps))
}

pub fn kawasaki_check(p: &CreasePattern) -> Result<LocalReport, FoldError> {
    let mut vertices = vec![];
    for &v in p.vertices.keys() {
        let sum = alternating_gap_sum(p, v)?;
        vertices.push(VertexResult {
            vertex: v,
            degree: p.degree(v),
            pass: sum.raw_is_zero(),
            value: Some(sum),
        });
    }
    Ok(LocalReport {
        check: "kawasaki",
        vertices,
    })
}

/// Every gap at every vertex is strictly less than half a turn.
pub fn convexity_check(p: &CreasePattern) -> LocalReport {
    let vertices = p
        .vertices
        .keys()
        .map(|&v| {
            let dirs = p.directions_at(v);
            let widest = cyclic_gaps(&dirs).ok().and_then(|gaps| {
                gaps.into_iter()
                    .max_by(|a, b| a.raw_radians().total_cmp(&b.raw_radians()))
            });
            let pass = match widest {
                Some(TurnAngle::Exact(r)) => r < crate::geom::ratio(1, 2),
                Some(g) => g.raw_radians() < std::f64::consts::PI - crate::geom::EPS_ANG,
                None => false,
            };
            VertexResult {
                vertex: v,
                degree: dirs.len(),
                pass,
                value: widest,
            }
        })
        .collect();
    LocalReport {
        check: "convexity",
        vertices,
    }
}

/// The fold map φ: one isometry per face, identity on the base face.
#[derive(Clone, Debug)]
pub struct FoldMap {
    pub base_face: FaceId,
    pub isos: Vec<Isometry2>,
    pub pattern: CreasePattern,
    pub faces: FaceComplex,
}

/// The unbounded face met first when sweeping counter-clockwise from the
/// positive x direction.
pub fn default_base_face(faces: &FaceComplex) -> FaceId {
    let r = 0.5 * faces.clip_radius;
    faces.locate(Point2::new(r, 1e-7 * r)).unwrap_or(0)
}

/// Reflection across crease `c`.
pub fn crease_reflection(p: &CreasePattern, c: CreaseId) -> Isometry2 {
    let (a, _) = p.crease_points(c);
    Isometry2::reflection(a, p.crease_dir(c))
}

pub fn build_fold_map(p: &CreasePattern, base: Option<FaceId>) -> Result<FoldMap, FoldError> {
    let faces = build_faces(p)?;
    if let Some(v) = maekawa_check(p).failures().first() {
        return Err(FoldError::OddDegree(*v));
    }
    if let Some(v) = kawasaki_check(p)?.failures().first() {
        return Err(FoldError::NotFlatFoldable(*v));
    }
    let base = base.unwrap_or_else(|| default_base_face(&faces));
    if base >= faces.faces.len() {
        return Err(FoldError::UnknownFace(base));
    }
    let mut isos: Vec<Option<Isometry2>> = vec![None; faces.faces.len()];
    isos[base] = Some(Isometry2::identity());
    let mut queue = VecDeque::from([base]);
    while let Some(f) = queue.pop_front() {
        let iso_f = isos[f].expect("assigned before queued");
        for (c, g) in faces.neighbours(f) {
            let expect = iso_f.compose(&crease_reflection(p, c));
            match isos[g] {
                None => {
                    isos[g] = Some(expect);
                    queue.push_back(g);
                }
                Some(existing) if !existing.approx_eq(&expect) => {
                    let v = match p.crease_ends(c).0 {
                        Node::Vertex(v) => v,
                        Node::Infinity => unreachable!(),
                    };
                    return Err(FoldError::NotFlatFoldable(v));
                }
                Some(_) => {}
            }
        }
    }
    Ok(FoldMap {
        base_face: base,
        isos: isos.into_iter().map(|i| i.unwrap_or_else(Isometry2::identity)).collect(),
        pattern: p.clone(),
        faces,
    })
}

impl FoldMap {
    pub fn face_count(&self) -> usize {
        self.isos.len()
    }

    pub fn evaluate(&self, p: Point2) -> Result<Point2, FoldError> {
        evaluate(self, p)
    }

    /// Image of a vertex point (all incident faces agree).
    pub fn vertex_image(&self, v: VertexId) -> Point2 {
        let c = self.pattern.incident(v)[0];
        let f = self.faces.crease_faces[c].0;
        self.isos[f].apply(self.pattern.pos(v))
    }

    /// Face counter-clockwise after crease `c` around its endpoint `v`.
    pub fn face_after(&self, v: VertexId, c: CreaseId) -> FaceId {
        let (a, b) = self.faces.crease_faces[c];
        if self.pattern.crease_ends(c).0 == Node::Vertex(v) {
            a
        } else {
            b
        }
    }

    /// Vertex points on the boundary of face `f`.
    pub fn face_vertices(&self, f: FaceId) -> Vec<VertexId> {
        let mut out = vec![];
        for h in &self.faces.faces[f].boundary {
            let (a, b) = self.pattern.crease_ends(h.crease);
            for n in [a, b] {
                if let Node::Vertex(v) = n {
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// Reduce to faces, isometries and crease pieces for layer ordering.
    pub fn to_sheet(&self) -> FoldedSheet {
        let clip = self.faces.clip_radius;
        let faces = self
            .faces
            .faces
            .iter()
            .zip(&self.isos)
            .map(|(f, iso)| SheetFace {
                region: f.region.clone(),
                iso: *iso,
            })
            .collect();
        let box_lines = {
            let sq = crate::geom::ConvexPolygon::square(clip);
            sq.edges().collect::<Vec<_>>()
        };
        let creases = (0..self.pattern.crease_count())
            .map(|c| {
                let (a, b) = self.pattern.crease_points(c);
                let (a, b) = if self.pattern.is_ray(c) {
                    let far = a + (b - a).scale(4.0 * clip);
                    clip_segment(a, far, &box_lines, 0.0).unwrap_or((a, b))
                } else {
                    (a, b)
                };
                SheetCrease {
                    faces: self.faces.crease_faces[c],
                    a,
                    b,
                }
            })
            .collect();
        FoldedSheet { faces, creases }
    }
}

pub fn evaluate(m: &FoldMap, p: Point2) -> Result<Point2, FoldError> {
    if !p.is_finite() || p.x.abs().max(p.y.abs()) >= m.faces.clip_radius {
        return Err(FoldError::PointLocation(p));
    }
    let f = m.faces.locate(p).ok_or(FoldError::PointLocation(p))?;
    Ok(m.isos[f].apply(p))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RigidPair {
    pub face: FaceId,
    pub u: VertexId,
    pub v: VertexId,
    pub sheet_dist: f64,
    pub image_dist: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RigidReport {
    pub pairs_checked: usize,
    pub violations: Vec<RigidPair>,
}

impl RigidReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Vertex points sharing a face keep their distance under φ.
pub fn nearby_rigid_check(m: &FoldMap) -> RigidReport {
    let mut pairs_checked = 0;
    let mut violations = vec![];
    for f in 0..m.face_count() {
        let vs = m.face_vertices(f);
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let (u, v) = (vs[i], vs[j]);
                let sheet_dist = m.pattern.pos(u).dist(m.pattern.pos(v));
                let image_dist = m.vertex_image(u).dist(m.vertex_image(v));
                pairs_checked += 1;
                if (sheet_dist - image_dist).abs() > 1e3 * EPS_LEN {
                    violations.push(RigidPair {
                        face: f,
                        u,
                        v,
                        sheet_dist,
                        image_dist,
                    });
                }
            }
        }
    }
    RigidReport {
        pairs_checked,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Orientation;

    fn single_vertex(turns: &[(i64, i64)]) -> CreasePattern {
        let mut p = CreasePattern::new();
        let v = p.add_vertex(Point2::ORIGIN);
        for &(n, d) in turns {
            p.add_ray(v, TurnAngle::turns(n, d));
        }
        p
    }

    fn base_star6() -> CreasePattern {
        let mut p = CreasePattern::new();
        let v = p.add_vertex(Point2::ORIGIN);
        let mut acc = 0;
        for k in [3, 3, 2, 2, 2, 2] {
            p.add_ray(v, TurnAngle::turns(acc, 14));
            acc += k;
        }
        p
    }

    #[test]
    fn maekawa_examples() {
        let cross = single_vertex(&[(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert!(maekawa_check(&cross).pass());
        let three = single_vertex(&[(0, 3), (1, 3), (2, 3)]);
        assert_eq!(maekawa_check(&three).failures(), vec![0]);
        assert!(maekawa_check(&base_star6()).pass());
    }

    #[test]
    fn kawasaki_examples() {
        let cross = single_vertex(&[(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert!(kawasaki_check(&cross).unwrap().pass());
        let star = kawasaki_check(&base_star6()).unwrap();
        assert!(star.pass());
        assert_eq!(star.vertices[0].value.unwrap().exact(), Some(crate::geom::ratio(0, 1)));
        // gaps π/2, π/4, 3π/4, π/2
        let bad = single_vertex(&[(0, 8), (2, 8), (3, 8), (6, 8)]);
        let r = kawasaki_check(&bad).unwrap();
        assert!(!r.pass());
        assert_eq!(r.vertices[0].value.unwrap().exact(), Some(crate::geom::ratio(1, 4)));
        let three = single_vertex(&[(0, 3), (1, 3), (2, 3)]);
        assert_eq!(kawasaki_check(&three), Err(FoldError::OddDegree(0)));
    }

    #[test]
    fn convexity_examples() {
        let cross = single_vertex(&[(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert!(convexity_check(&cross).pass());
        let reflex = single_vertex(&[(0, 20), (1, 20), (2, 20), (3, 20)]);
        assert!(!convexity_check(&reflex).pass());
    }

    #[test]
    fn quarter_cross_fold_map_is_abs() {
        let cross = single_vertex(&[(0, 4), (1, 4), (2, 4), (3, 4)]);
        let m = build_fold_map(&cross, None).unwrap();
        assert!(m.faces.faces[m.base_face].region.contains_strict(Point2::new(1.0, 1.0), 0.0));
        let img = m.evaluate(Point2::new(-2.0, 3.0)).unwrap();
        assert!(img.dist(Point2::new(2.0, 3.0)) < 1e-9);
        let img = m.evaluate(Point2::new(-2.0, -0.5)).unwrap();
        assert!(img.dist(Point2::new(2.0, 0.5)) < 1e-9);
        assert!(m.evaluate(Point2::new(0.5, 0.5)).unwrap().dist(Point2::new(0.5, 0.5)) < 1e-12);
        // a crease point has the same image from both sides
        let on = Point2::new(0.0, 2.0);
        let left = m.isos[m.faces.locate(Point2::new(-1e-3, 2.0)).unwrap()].apply(on);
        let right = m.isos[m.faces.locate(Point2::new(1e-3, 2.0)).unwrap()].apply(on);
        assert!(left.dist(right) < 1e-12);
    }

    #[test]
    fn orientation_alternates_across_creases() {
        let m = build_fold_map(&base_star6(), None).unwrap();
        for &(f, g) in &m.faces.crease_faces {
            assert_ne!(m.isos[f].orientation, m.isos[g].orientation);
        }
        let reversing = m.isos.iter().filter(|i| i.orientation == Orientation::Reversing).count();
        assert_eq!(reversing, 3);
    }

    #[test]
    fn unfoldable_vertex_is_reported() {
        let bad = single_vertex(&[(0, 8), (2, 8), (3, 8), (6, 8)]);
        assert_eq!(build_fold_map(&bad, None).unwrap_err(), FoldError::NotFlatFoldable(0));
    }

    #[test]
    fn nearby_rigid_on_segment_endpoints() {
        let mut p = CreasePattern::new();
        let a = p.add_vertex(Point2::ORIGIN);
        let b = p.add_vertex(Point2::new(1.0, 0.0));
        p.add_segment_dir(a, b, TurnAngle::ZERO);
        for k in [1, 2, 3] {
            p.add_ray(a, TurnAngle::turns(k, 4));
        }
        for k in [1, 3, 4] {
            p.add_ray(b, TurnAngle::turns(k, 4));
        }
        let m = build_fold_map(&p, None).unwrap();
        let r = nearby_rigid_check(&m);
        assert!(r.pass());
        assert!(r.pairs_checked > 0);
    }
}
