use crate::foldcheck::{build_fold_map, FoldMap};
use crate::geom::{ratio, Point2, Rational, TurnAngle};
use crate::pattern::{
    folding_graph, rays_at_infinity, CreasePattern, FoldingGraph, Node, Ray, Segment, VertexId,
};

use super::{next_vertex_id, wheel_replace_graph, DualOrthotreeSpec, OrthoError};

const MAX_HALVINGS: usize = 40;

/// One vertex at the origin with rays along both axes: the plane folded
/// twice into a quadrant.
pub fn quarter_fold() -> CreasePattern {
    let mut p = CreasePattern::new();
    let v = p.add_vertex(Point2::new(0.0, 0.0));
    for k in 0..4 {
        p.add_ray(v, TurnAngle::turns(k, 4));
    }
    p
}

/// Angular hull of a closed chain of image arcs.
struct Hull {
    bisector: TurnAngle,
    width: TurnAngle,
    narrow: bool,
}

/// `dirs` are sheet directions in counter-clockwise order, `rev[k]` tells
/// whether the face between `dirs[k]` and `dirs[k + 1]` is flipped, and `u0`
/// is the image of `dirs[0]`.
fn arc_hull(dirs: &[TurnAngle], rev: &[bool], u0: TurnAngle) -> Hull {
    let d = dirs.len();
    let gaps: Vec<TurnAngle> = (0..d).map(|k| dirs[k].ccw_to(dirs[(k + 1) % d])).collect();
    let exact: Option<Vec<Rational>> = gaps.iter().map(|g| g.exact()).collect();
    match (exact, u0.exact()) {
        (Some(mut gaps), Some(u0)) => {
            if gaps.iter().all(|g| *g == ratio(0, 1)) {
                gaps[d - 1] = ratio(1, 1);
            }
            let (mut lo, mut hi, mut th) = (ratio(0, 1), ratio(0, 1), ratio(0, 1));
            for k in 0..d {
                th = if rev[k] { th - gaps[k] } else { th + gaps[k] };
                lo = lo.min(th);
                hi = hi.max(th);
            }
            let width = hi - lo;
            Hull {
                bisector: TurnAngle::from_ratio(u0 + (hi + lo) / 2),
                width: TurnAngle::Exact(width),
                narrow: width < ratio(1, 2),
            }
        }
        _ => {
            let mut gaps: Vec<f64> = gaps.iter().map(|g| g.as_turns_f64()).collect();
            if gaps.iter().all(|g| *g == 0.0) {
                gaps[d - 1] = 1.0;
            }
            let (mut lo, mut hi, mut th) = (0.0f64, 0.0f64, 0.0f64);
            for k in 0..d {
                th += if rev[k] { -gaps[k] } else { gaps[k] };
                lo = lo.min(th);
                hi = hi.max(th);
            }
            let width = hi - lo;
            let tau = std::f64::consts::TAU;
            Hull {
                bisector: TurnAngle::from_radians(u0.radians() + (hi + lo) / 2.0 * tau),
                width: TurnAngle::Radians(width * tau),
                narrow: width * tau < std::f64::consts::PI - crate::geom::EPS_ANG,
            }
        }
    }
}

/// Bisector and opening of the folded image of a neighbourhood of infinity.
/// Fails when the image is not inside a wedge narrower than half a turn.
pub fn asymptotic_image_wedge(p: &CreasePattern) -> Result<(TurnAngle, TurnAngle), OrthoError> {
    let m = build_fold_map(p, None)?;
    let hull = infinity_hull(&m)?;
    Ok((hull.bisector, hull.width))
}

fn infinity_hull(m: &FoldMap) -> Result<Hull, OrthoError> {
    let p = &m.pattern;
    let rays = rays_at_infinity(p);
    if rays.is_empty() {
        return Err(OrthoError::UnknownNode(Node::Infinity));
    }
    let dirs: Vec<TurnAngle> = rays.iter().map(|&r| p.crease_dir(r)).collect();
    let faces: Vec<usize> = rays.iter().map(|&r| m.faces.crease_faces[r].0).collect();
    let rev: Vec<bool> = faces.iter().map(|&f| m.isos[f].orientation.is_reversing()).collect();
    let u0 = m.isos[faces[0]].apply_dir(dirs[0]);
    let hull = arc_hull(&dirs, &rev, u0);
    if !hull.narrow {
        return Err(OrthoError::NotInWedge);
    }
    Ok(hull)
}

fn point_crease_dist(p: &CreasePattern, c: usize, x: Point2) -> f64 {
    let (a, b) = p.crease_points(c);
    let ab = b - a;
    let t = (x - a).dot(ab) / ab.dot(ab);
    let t = if p.is_ray(c) { t.max(0.0) } else { t.clamp(0.0, 1.0) };
    x.dist(a + ab.scale(t))
}

/// Half the clearance of `v` from everything not touching it.
fn default_delta(p: &CreasePattern, v: VertexId) -> f64 {
    let x = p.pos(v);
    let inc = p.incident(v);
    let verts = p
        .vertices
        .iter()
        .filter(|(&w, _)| w != v)
        .map(|(_, &q)| q.dist(x));
    let creases = (0..p.crease_count())
        .filter(|c| !inc.contains(c))
        .map(|c| point_crease_dist(p, c, x));
    let m = verts.chain(creases).fold(f64::INFINITY, f64::min);
    if m.is_finite() {
        0.5 * m
    } else {
        1.0
    }
}

/// Wheel replacement at `v` realized by one more fold. Without `delta` the
/// chord distance starts at half the clearance and is halved until the
/// result is a valid flat-foldable pattern.
pub fn wheel_replace_fold(
    p: &CreasePattern,
    v: Node,
    delta: Option<f64>,
) -> Result<CreasePattern, OrthoError> {
    wheel_replace_fold_at(p, v, delta, 0).map(|(q, _)| q)
}

/// As [`wheel_replace_fold`]; the new vertex `next + j` sits on the crease
/// at position `(start + j) % d` of the rotation at `v`. Also returns the
/// chord distance used (for infinity, the offset of the chord line).
pub fn wheel_replace_fold_at(
    p: &CreasePattern,
    v: Node,
    delta: Option<f64>,
    start: usize,
) -> Result<(CreasePattern, f64), OrthoError> {
    let m = build_fold_map(p, None)?;
    match v {
        Node::Infinity => replace_infinity(&m, start),
        Node::Vertex(v) => {
            if !p.vertices.contains_key(&v) {
                return Err(OrthoError::UnknownNode(Node::Vertex(v)));
            }
            let d = p.degree(v);
            if d < 3 {
                return Err(OrthoError::Degree { node: Node::Vertex(v), degree: d });
            }
            let mut delta_try = delta.unwrap_or_else(|| default_delta(p, v));
            let attempts = if delta.is_some() { 1 } else { MAX_HALVINGS };
            for _ in 0..attempts {
                let q = replace_finite(&m, v, delta_try, start)?;
                if q.validate().is_valid() && build_fold_map(&q, None).is_ok() {
                    return Ok((q, delta_try));
                }
                delta_try *= 0.5;
            }
            Err(OrthoError::NoSafeDelta(Node::Vertex(v)))
        }
    }
}

fn replace_finite(
    m: &FoldMap,
    v: VertexId,
    delta: f64,
    start: usize,
) -> Result<CreasePattern, OrthoError> {
    let p = &m.pattern;
    let inc = p.incident(v);
    let d = inc.len();
    let dirs: Vec<TurnAngle> = inc.iter().map(|&c| p.dir_from(c, v)).collect();
    let faces: Vec<usize> = inc.iter().map(|&c| m.face_after(v, c)).collect();
    let rev: Vec<bool> = faces.iter().map(|&f| m.isos[f].orientation.is_reversing()).collect();
    let u: Vec<TurnAngle> = (0..d).map(|k| m.isos[faces[k]].apply_dir(dirs[k])).collect();
    let hull = arc_hull(&dirs, &rev, u[0]);
    if !hull.narrow {
        return Err(OrthoError::NotInWedge);
    }
    let b = Point2::unit(hull.bisector);
    let x = p.pos(v);
    let w: Vec<Point2> = (0..d)
        .map(|k| x + Point2::unit(dirs[k]).scale(delta / Point2::unit(u[k]).dot(b)))
        .collect();

    let next = next_vertex_id(&folding_graph(p)?);
    let mut ids = vec![0; d];
    for j in 0..d {
        ids[(start + j) % d] = next + j;
    }
    let mut q = p.clone();
    for k in 0..d {
        q.vertices.insert(ids[k], w[k]);
    }
    let mut hubs = vec![];
    for k in 0..d {
        let c = inc[k];
        let exact = Some(p.crease_dir(c));
        if p.is_ray(c) {
            q.rays[c - p.segments.len()].apex = ids[k];
        } else {
            let s = &mut q.segments[c];
            if s.a == v {
                s.a = ids[k];
            } else {
                s.b = ids[k];
            }
            s.dir = exact;
        }
        hubs.push(Segment { a: v, b: ids[k], dir: Some(dirs[k]) });
    }
    let chord = hull.bisector + TurnAngle::turns(1, 4);
    for k in 0..d {
        let k1 = (k + 1) % d;
        let dir = cycle_dir(m, faces[k], chord, w[k1] - w[k]);
        hubs.push(Segment { a: ids[k], b: ids[k1], dir: Some(dir) });
    }
    q.segments.extend(hubs);
    Ok(q)
}

/// Sheet direction of the chord inside face `f`, oriented along `towards`.
fn cycle_dir(m: &FoldMap, f: usize, chord: TurnAngle, towards: Point2) -> TurnAngle {
    let dir = m.isos[f].inverse().apply_dir(chord);
    if Point2::unit(dir).dot(towards) < 0.0 {
        dir + TurnAngle::turns(1, 2)
    } else {
        dir
    }
}

fn replace_infinity(m: &FoldMap, start: usize) -> Result<(CreasePattern, f64), OrthoError> {
    let p = &m.pattern;
    let hull = infinity_hull(m)?;
    let rays = rays_at_infinity(p);
    let d = rays.len();
    if d < 3 {
        return Err(OrthoError::Degree { node: Node::Infinity, degree: d });
    }
    let b = Point2::unit(hull.bisector);
    let reach = p
        .vertices
        .keys()
        .map(|&v| m.vertex_image(v).dot(b))
        .fold(f64::NEG_INFINITY, f64::max)
        + 1.0;
    let faces: Vec<usize> = rays.iter().map(|&r| m.faces.crease_faces[r].0).collect();
    let w: Vec<Point2> = rays
        .iter()
        .zip(&faces)
        .map(|(&r, &f)| {
            let ray = p.rays[r - p.segments.len()];
            let u = Point2::unit(m.isos[f].apply_dir(ray.dir));
            let t = (reach - m.vertex_image(ray.apex).dot(b)) / u.dot(b);
            p.pos(ray.apex) + Point2::unit(ray.dir).scale(t)
        })
        .collect();

    let next = next_vertex_id(&folding_graph(p)?);
    let mut q = CreasePattern {
        vertices: p.vertices.clone(),
        segments: p.segments.clone(),
        rays: vec![],
    };
    let mut ids = vec![0; d];
    for j in 0..d {
        ids[(start + j) % d] = next + j;
    }
    for k in 0..d {
        q.vertices.insert(ids[k], w[k]);
    }
    let chord = hull.bisector + TurnAngle::turns(1, 4);
    for k in 0..d {
        let ray = p.rays[rays[k] - p.segments.len()];
        q.segments.push(Segment { a: ray.apex, b: ids[k], dir: Some(ray.dir) });
        q.rays.push(Ray { apex: ids[k], dir: ray.dir });
    }
    for k in 0..d {
        let k1 = (k + 1) % d;
        let dir = cycle_dir(m, faces[k], chord, w[k1] - w[k]);
        q.segments.push(Segment { a: ids[k], b: ids[k1], dir: Some(dir) });
    }
    if !q.validate().is_valid() {
        return Err(OrthoError::NoSafeDelta(Node::Infinity));
    }
    build_fold_map(&q, None)?;
    Ok((q, reach))
}

#[derive(Clone, Debug)]
pub struct OrthoRealization {
    pub pattern: CreasePattern,
    pub graph: FoldingGraph,
    /// Chord distance used at each step.
    pub deltas: Vec<f64>,
}

/// Neighbour labels around `n` in rotation order.
fn neighbour_seq(g: &FoldingGraph, i: usize) -> Vec<Node> {
    g.rotation[i]
        .iter()
        .map(|&e| {
            let (a, b) = g.graph.edges[e];
            g.nodes[if a == i { b } else { a }]
        })
        .collect()
}

fn cyclic_shift(of: &[Node], target: &[Node]) -> Option<usize> {
    let d = of.len();
    if d != target.len() {
        return None;
    }
    (0..d.max(1)).find(|&s| (0..d).all(|j| of[(s + j) % d] == target[j]))
}

/// Same labelled plane multigraph: equal node sets and, at every node, the
/// same cyclic sequence of neighbours.
pub fn same_labelled(a: &FoldingGraph, b: &FoldingGraph) -> bool {
    if a.nodes.len() != b.nodes.len() || a.graph.edges.len() != b.graph.edges.len() {
        return false;
    }
    a.nodes.iter().enumerate().all(|(i, &n)| match b.index_of(n) {
        Some(j) => cyclic_shift(&neighbour_seq(a, i), &neighbour_seq(b, j)).is_some(),
        None => false,
    })
}

/// Realize a dual orthotree by folding: start from the quarter fold and
/// apply each wheel replacement geometrically, replaying it on the graph.
pub fn realize_dual_orthotree(spec: &DualOrthotreeSpec) -> Result<OrthoRealization, OrthoError> {
    let mut p = quarter_fold();
    let mut abstract_g = folding_graph(&p)?;
    let mut deltas = vec![];
    for step in &spec.steps {
        let geo = folding_graph(&p)?;
        let i = geo.index_of(step.target).ok_or(OrthoError::UnknownNode(step.target))?;
        let j = abstract_g
            .index_of(step.target)
            .ok_or(OrthoError::UnknownNode(step.target))?;
        let start = cyclic_shift(&neighbour_seq(&geo, i), &neighbour_seq(&abstract_g, j))
            .ok_or(OrthoError::GraphMismatch)?;
        // the geometric rotation is indexed from the smallest direction, so
        // position `start` there is position 0 of the abstract rotation
        let (q, delta) = wheel_replace_fold_at(&p, step.target, None, start)?;
        abstract_g = wheel_replace_graph(&abstract_g, step)?;
        asymptotic_image_wedge(&q)?;
        p = q;
        deltas.push(delta);
    }
    let graph = folding_graph(&p)?;
    if !same_labelled(&graph, &abstract_g) {
        return Err(OrthoError::GraphMismatch);
    }
    Ok(OrthoRealization { pattern: p, graph, deltas })
}
