//! Crease patterns on the infinite sheet, their folding graph (with the
//! vertex at infinity), truncated graph and face complex.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{orient, ConvexPolygon, Point2, TurnAngle, EPS_LEN};
use crate::graph::MultiGraph;

pub type VertexId = usize;
/// Index into the pattern's creases: segments first, then rays.
pub type CreaseId = usize;
pub type FaceId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: VertexId,
    pub b: VertexId,
    /// Exact direction from `a` to `b`, when the construction knows it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<TurnAngle>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub apex: VertexId,
    pub dir: TurnAngle,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CreasePattern {
    pub vertices: BTreeMap<VertexId, Point2>,
    pub segments: Vec<Segment>,
    pub rays: Vec<Ray>,
}

/// One end of a crease as seen from the folding graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Vertex(VertexId),
    Infinity,
}

impl Serialize for Node {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Id(VertexId),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Id(v) => Ok(Node::Vertex(v)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl std::str::FromStr for Node {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Node::Infinity),
            t => t.parse().map(Node::Vertex).map_err(|_| format!("bad node `{t}`")),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Vertex(v) => write!(f, "{v}"),
            Node::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NoVertices,
    NonFiniteVertex { vertex: VertexId },
    UnknownVertex { crease: CreaseId },
    DegenerateCrease { crease: CreaseId },
    DuplicateVertices { a: VertexId, b: VertexId },
    CrossingCreases { a: CreaseId, b: CreaseId },
    VertexOnCrease { vertex: VertexId, crease: CreaseId },
    CollinearDegreeTwo { vertex: VertexId },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "no vertex points"),
            Violation::NonFiniteVertex { vertex } => write!(f, "vertex {vertex}: non-finite coordinate"),
            Violation::UnknownVertex { crease } => write!(f, "crease {crease}: unknown endpoint"),
            Violation::DegenerateCrease { crease } => write!(f, "crease {crease}: zero length"),
            Violation::DuplicateVertices { a, b } => write!(f, "duplicate vertices {a} and {b}"),
            Violation::CrossingCreases { a, b } => write!(f, "crossing creases {a} and {b}"),
            Violation::VertexOnCrease { vertex, crease } => {
                write!(f, "vertex {vertex} lies inside crease {crease}")
            }
            Violation::CollinearDegreeTwo { vertex } => write!(f, "collinear degree-2 vertex {vertex}"),
            Violation::Disconnected { components } => {
                write!(f, "crease graph has {components} components")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PatternError {
    #[error("invalid pattern: {0}")]
    Invalid(String),
}

impl PatternError {
    fn from_report(r: &ValidationReport) -> Self {
        let msg: Vec<String> = r.violations.iter().map(|v| v.to_string()).collect();
        PatternError::Invalid(msg.join("; "))
    }
}

/// A crease as a parametric piece `origin + t * vec`, `t ∈ [0, t_max]`.
#[derive(Clone, Copy, Debug)]
struct Piece {
    origin: Point2,
    vec: Point2,
    unbounded: bool,
}

impl Piece {
    fn t_max(&self) -> f64 {
        if self.unbounded {
            f64::INFINITY
        } else {
            1.0
        }
    }

    /// Parameter of `p` along the piece, if `p` lies on its supporting line.
    fn param_of(&self, p: Point2) -> Option<f64> {
        let len = self.vec.norm();
        if (orient(self.origin, self.origin + self.vec, p) / len).abs() > EPS_LEN {
            return None;
        }
        Some((p - self.origin).dot(self.vec) / (len * len))
    }

    fn strictly_contains(&self, p: Point2) -> bool {
        let len = self.vec.norm();
        match self.param_of(p) {
            Some(t) => t * len > EPS_LEN && (self.unbounded || (1.0 - t) * len > EPS_LEN),
            None => false,
        }
    }
}

/// Whether two pieces meet at a point other than a shared endpoint, or
/// overlap along a positive length.
fn pieces_conflict(a: &Piece, b: &Piece, shared: Option<(bool, bool)>) -> bool {
    let denom = a.vec.cross(b.vec);
    let la = a.vec.norm();
    let lb = b.vec.norm();
    if (denom / (la * lb)).abs() < 1e-12 {
        // parallel: conflict only if collinear and overlapping in more than a point
        if (orient(a.origin, a.origin + a.vec, b.origin) / la).abs() > EPS_LEN {
            return false;
        }
        let t0 = (b.origin - a.origin).dot(a.vec) / (la * la);
        let dir = b.vec.dot(a.vec) / (la * la);
        let t1 = if b.unbounded {
            if dir > 0.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        } else {
            t0 + dir
        };
        let (lo, hi) = (t0.min(t1), t0.max(t1));
        let olo = lo.max(0.0);
        let ohi = hi.min(a.t_max());
        return (ohi - olo) * la > EPS_LEN;
    }
    let d = b.origin - a.origin;
    let t = d.cross(b.vec) / denom;
    let s = d.cross(a.vec) / denom;
    let tol_a = EPS_LEN / la;
    let tol_b = EPS_LEN / lb;
    let on_a = t >= -tol_a && t <= a.t_max() + tol_a;
    let on_b = s >= -tol_b && s <= b.t_max() + tol_b;
    if !(on_a && on_b) {
        return false;
    }
    // a meeting at endpoints shared by both creases is allowed
    let a_end = if t.abs() <= tol_a {
        Some(false)
    } else if !a.unbounded && (t - 1.0).abs() <= tol_a {
        Some(true)
    } else {
        None
    };
    let b_end = if s.abs() <= tol_b {
        Some(false)
    } else if !b.unbounded && (s - 1.0).abs() <= tol_b {
        Some(true)
    } else {
        None
    };
    match (shared, a_end, b_end) {
        (Some((ea, eb)), Some(x), Some(y)) => !(ea == x && eb == y),
        _ => true,
    }
}

impl CreasePattern {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, p: Point2) -> VertexId {
        let id = self.vertices.keys().next_back().map_or(0, |k| k + 1);
        self.vertices.insert(id, p);
        id
    }

    pub fn add_segment(&mut self, a: VertexId, b: VertexId) -> CreaseId {
        self.segments.push(Segment { a, b, dir: None });
        self.segments.len() - 1
    }

    pub fn add_segment_dir(&mut self, a: VertexId, b: VertexId, dir: TurnAngle) -> CreaseId {
        self.segments.push(Segment { a, b, dir: Some(dir) });
        self.segments.len() - 1
    }

    /// Adds a ray; returns its crease id (rays are numbered after segments,
    /// so ids shift if segments are added later).
    pub fn add_ray(&mut self, apex: VertexId, dir: TurnAngle) -> CreaseId {
        self.rays.push(Ray { apex, dir });
        self.segments.len() + self.rays.len() - 1
    }

    pub fn crease_count(&self) -> usize {
        self.segments.len() + self.rays.len()
    }

    pub fn pos(&self, v: VertexId) -> Point2 {
        self.vertices[&v]
    }

    pub fn is_ray(&self, c: CreaseId) -> bool {
        c >= self.segments.len()
    }

    /// Endpoints of crease `c` as graph nodes.
    pub fn crease_ends(&self, c: CreaseId) -> (Node, Node) {
        if c < self.segments.len() {
            let s = self.segments[c];
            (Node::Vertex(s.a), Node::Vertex(s.b))
        } else {
            (Node::Vertex(self.rays[c - self.segments.len()].apex), Node::Infinity)
        }
    }

    /// Direction of crease `c` leaving its first endpoint.
    pub fn crease_dir(&self, c: CreaseId) -> TurnAngle {
        if c < self.segments.len() {
            let s = self.segments[c];
            s.dir
                .unwrap_or_else(|| (self.pos(s.b) - self.pos(s.a)).direction())
        } else {
            self.rays[c - self.segments.len()].dir
        }
    }

    /// Direction of crease `c` leaving vertex `v` (one of its endpoints).
    pub fn dir_from(&self, c: CreaseId, v: VertexId) -> TurnAngle {
        let d = self.crease_dir(c);
        match self.crease_ends(c) {
            (Node::Vertex(a), _) if a == v => d,
            _ => d + TurnAngle::turns(1, 2),
        }
    }

    /// The first endpoint of a crease and a second point on it (for rays,
    /// a point at unit distance).
    pub fn crease_points(&self, c: CreaseId) -> (Point2, Point2) {
        if c < self.segments.len() {
            let s = self.segments[c];
            (self.pos(s.a), self.pos(s.b))
        } else {
            let r = self.rays[c - self.segments.len()];
            let a = self.pos(r.apex);
            (a, a + Point2::unit(r.dir))
        }
    }

    fn piece(&self, c: CreaseId) -> Piece {
        let (a, b) = self.crease_points(c);
        Piece {
            origin: a,
            vec: b - a,
            unbounded: self.is_ray(c),
        }
    }

    /// Creases incident to `v` in counter-clockwise order of their
    /// direction, starting from direction 0.
    pub fn incident(&self, v: VertexId) -> Vec<CreaseId> {
        let mut inc: Vec<(TurnAngle, CreaseId)> = (0..self.crease_count())
            .filter(|&c| {
                let (a, b) = self.crease_ends(c);
                a == Node::Vertex(v) || b == Node::Vertex(v)
            })
            .map(|c| (self.dir_from(c, v), c))
            .collect();
        inc.sort_by(|x, y| x.0.cmp_value(&y.0).then(x.1.cmp(&y.1)));
        inc.into_iter().map(|(_, c)| c).collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    /// Directions of the creases at `v`, in the order of [`Self::incident`].
    pub fn directions_at(&self, v: VertexId) -> Vec<TurnAngle> {
        self.incident(v)
            .into_iter()
            .map(|c| self.dir_from(c, v))
            .collect()
    }

    /// `R = 2 (max |coordinate| + 1)`, the radius used to clip rays.
    pub fn bounding_radius(&self) -> f64 {
        let m = self
            .vertices
            .values()
            .map(|p| p.x.abs().max(p.y.abs()))
            .fold(0.0f64, f64::max);
        2.0 * (m + 1.0)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_pattern(self)
    }

    pub(crate) fn require_valid(&self) -> Result<(), PatternError> {
        let r = self.validate();
        if r.is_valid() {
            Ok(())
        } else {
            Err(PatternError::from_report(&r))
        }
    }

    /// Lists the vertices and creases as an untyped multigraph with the
    /// vertex at infinity last (if any ray exists).
    fn raw_graph(&self) -> (MultiGraph, Vec<Node>) {
        let mut nodes: Vec<Node> = self.vertices.keys().map(|&v| Node::Vertex(v)).collect();
        if !self.rays.is_empty() {
            nodes.push(Node::Infinity);
        }
        let index: BTreeMap<Node, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let mut g = MultiGraph::new(nodes.len());
        for c in 0..self.crease_count() {
            let (a, b) = self.crease_ends(c);
            if let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) {
                g.add_edge(i, j);
            }
        }
        (g, nodes)
    }
}

pub fn validate_pattern(p: &CreasePattern) -> ValidationReport {
    let mut out = vec![];
    if p.vertices.is_empty() {
        out.push(Violation::NoVertices);
    }
    for (&v, q) in &p.vertices {
        if !q.is_finite() {
            out.push(Violation::NonFiniteVertex { vertex: v });
        }
    }
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }
    let n = p.crease_count();
    let mut usable = vec![true; n];
    for c in 0..n {
        let (a, b) = p.crease_ends(c);
        let known = |x: Node| match x {
            Node::Vertex(v) => p.vertices.contains_key(&v),
            Node::Infinity => true,
        };
        if !known(a) || !known(b) {
            out.push(Violation::UnknownVertex { crease: c });
            usable[c] = false;
            continue;
        }
        if let (Node::Vertex(x), Node::Vertex(y)) = (a, b) {
            if x == y || p.pos(x).dist(p.pos(y)) <= EPS_LEN {
                out.push(Violation::DegenerateCrease { crease: c });
                usable[c] = false;
            }
        }
    }
    let ids: Vec<VertexId> = p.vertices.keys().copied().collect();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if p.pos(ids[i]).dist(p.pos(ids[j])) <= EPS_LEN {
                out.push(Violation::DuplicateVertices { a: ids[i], b: ids[j] });
            }
        }
    }
    let pieces: Vec<Option<Piece>> = (0..n)
        .map(|c| usable[c].then(|| p.piece(c)))
        .collect();
    for c in 0..n {
        let Some(pc) = pieces[c] else { continue };
        for &v in &ids {
            let (a, b) = p.crease_ends(c);
            if a == Node::Vertex(v) || b == Node::Vertex(v) {
                continue;
            }
            if pc.strictly_contains(p.pos(v)) {
                out.push(Violation::VertexOnCrease { vertex: v, crease: c });
            }
        }
    }
    for i in 0..n {
        let Some(pi) = pieces[i] else { continue };
        for j in i + 1..n {
            let Some(pj) = pieces[j] else { continue };
            let shared = shared_endpoint(p, i, j);
            if pieces_conflict(&pi, &pj, shared) {
                out.push(Violation::CrossingCreases { a: i, b: j });
            }
        }
    }
    for &v in &ids {
        let dirs = p.directions_at(v);
        if dirs.len() == 2 && (dirs[1] - dirs[0]).approx_eq(&TurnAngle::turns(1, 2)) {
            out.push(Violation::CollinearDegreeTwo { vertex: v });
        }
    }
    if out.is_empty() {
        let (g, _) = p.raw_graph();
        let comps = g.components_without(&[], &[]);
        if comps > 1 {
            out.push(Violation::Disconnected { components: comps });
        }
    }
    ValidationReport { violations: out }
}

/// Which parametric ends of creases `i` and `j` coincide at a shared vertex.
fn shared_endpoint(p: &CreasePattern, i: CreaseId, j: CreaseId) -> Option<(bool, bool)> {
    let (a0, a1) = p.crease_ends(i);
    let (b0, b1) = p.crease_ends(j);
    let pairs = [
        (a0, b0, false, false),
        (a0, b1, false, true),
        (a1, b0, true, false),
        (a1, b1, true, true),
    ];
    pairs.iter().find_map(|&(x, y, ex, ey)| match (x, y) {
        (Node::Vertex(u), Node::Vertex(w)) if u == w => Some((ex, ey)),
        _ => None,
    })
}

/// The graph of a local flat folding: one node per vertex point plus the
/// vertex at infinity when there are rays. Edge `i` is crease `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldingGraph {
    pub nodes: Vec<Node>,
    pub graph: MultiGraph,
    /// Edge ids around each node in counter-clockwise direction order. At
    /// infinity this is the order of the ray directions.
    pub rotation: Vec<Vec<usize>>,
}

impl FoldingGraph {
    pub fn index_of(&self, n: Node) -> Option<usize> {
        self.nodes.iter().position(|&x| x == n)
    }

    pub fn infinity(&self) -> Option<usize> {
        self.index_of(Node::Infinity)
    }

    pub fn has_infinity(&self) -> bool {
        self.infinity().is_some()
    }

    pub fn finite_count(&self) -> usize {
        self.nodes.len() - self.has_infinity() as usize
    }
}

/// Sort rays by their position at infinity: direction first, then lateral
/// offset for parallel rays (counter-clockwise as seen from far away).
pub fn rays_at_infinity(p: &CreasePattern) -> Vec<CreaseId> {
    let base = p.segments.len();
    let mut idx: Vec<usize> = (0..p.rays.len()).collect();
    idx.sort_by(|&i, &j| {
        let ri = p.rays[i];
        let rj = p.rays[j];
        ri.dir.cmp_value(&rj.dir).then_with(|| {
            if ri.dir.approx_eq(&rj.dir) {
                let u = Point2::unit(ri.dir);
                let oi = u.cross(p.pos(ri.apex));
                let oj = u.cross(p.pos(rj.apex));
                oi.total_cmp(&oj)
            } else {
                Ordering::Equal
            }
        })
    });
    idx.into_iter().map(|i| base + i).collect()
}

pub fn folding_graph(p: &CreasePattern) -> Result<FoldingGraph, PatternError> {
    p.require_valid()?;
    Ok(folding_graph_unchecked(p))
}

pub(crate) fn folding_graph_unchecked(p: &CreasePattern) -> FoldingGraph {
    let (graph, nodes) = p.raw_graph();
    let rotation = nodes
        .iter()
        .map(|n| match n {
            Node::Vertex(v) => p.incident(*v),
            Node::Infinity => rays_at_infinity(p),
        })
        .collect();
    FoldingGraph {
        nodes,
        graph,
        rotation,
    }
}

/// The truncated graph: the folding graph with every ray ending in its own
/// leaf instead of at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedGraph {
    /// `Some(v)` for vertex points, `None` for ray leaves.
    pub nodes: Vec<Option<VertexId>>,
    pub graph: MultiGraph,
    /// Counter-clockwise neighbour order at each node.
    pub rotation: Vec<Vec<usize>>,
}

impl TruncatedGraph {
    pub fn plane_shape(&self) -> crate::graph::PlaneTreeShape {
        crate::graph::PlaneTreeShape {
            rotation: self.rotation.clone(),
        }
    }
}

/// Builds the truncated graph by subdividing every edge at infinity of the
/// folding graph and deleting infinity.
pub fn truncated_graph(p: &CreasePattern) -> Result<TruncatedGraph, PatternError> {
    let fg = folding_graph(p)?;
    Ok(truncate(&fg))
}

fn truncate(fg: &FoldingGraph) -> TruncatedGraph {
    let inf = fg.infinity();
    let finite: Vec<usize> = (0..fg.nodes.len()).filter(|&i| Some(i) != inf).collect();
    let mut index = vec![usize::MAX; fg.nodes.len()];
    let mut nodes = vec![];
    for &i in &finite {
        index[i] = nodes.len();
        nodes.push(match fg.nodes[i] {
            Node::Vertex(v) => Some(v),
            Node::Infinity => None,
        });
    }
    let mut graph = MultiGraph::new(nodes.len());
    // subdivision node for each edge at infinity, keyed by edge id
    let mut leaf_of_edge = BTreeMap::new();
    for (e, &(a, b)) in fg.graph.edges.iter().enumerate() {
        if Some(a) == inf || Some(b) == inf {
            let apex = if Some(a) == inf { b } else { a };
            let leaf = nodes.len();
            nodes.push(None);
            graph.n += 1;
            graph.add_edge(index[apex], leaf);
            leaf_of_edge.insert(e, leaf);
        } else {
            graph.add_edge(index[a], index[b]);
        }
    }
    let mut rotation = vec![vec![]; nodes.len()];
    for &i in &finite {
        rotation[index[i]] = fg.rotation[i]
            .iter()
            .map(|&e| {
                if let Some(&leaf) = leaf_of_edge.get(&e) {
                    leaf
                } else {
                    let (a, b) = fg.graph.edges[e];
                    index[if a == i { b } else { a }]
                }
            })
            .collect();
    }
    for (&e, &leaf) in &leaf_of_edge {
        let (a, b) = fg.graph.edges[e];
        let apex = if Some(a) == inf { b } else { a };
        rotation[leaf] = vec![index[apex]];
    }
    TruncatedGraph {
        nodes,
        graph,
        rotation,
    }
}

/// Builds the truncated graph directly: one node per vertex point and one
/// per ray, an edge per segment and per ray.
pub fn truncated_graph_direct(p: &CreasePattern) -> Result<TruncatedGraph, PatternError> {
    p.require_valid()?;
    let mut nodes: Vec<Option<VertexId>> = p.vertices.keys().map(|&v| Some(v)).collect();
    let index: BTreeMap<VertexId, usize> = p
        .vertices
        .keys()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut graph = MultiGraph::new(nodes.len());
    let mut leaf_of_crease = BTreeMap::new();
    for c in 0..p.crease_count() {
        match p.crease_ends(c) {
            (Node::Vertex(a), Node::Vertex(b)) => {
                graph.add_edge(index[&a], index[&b]);
            }
            (Node::Vertex(a), Node::Infinity) => {
                let leaf = nodes.len();
                nodes.push(None);
                graph.n += 1;
                graph.add_edge(index[&a], leaf);
                leaf_of_crease.insert(c, leaf);
            }
            _ => unreachable!("rays always start at a vertex"),
        }
    }
    let mut rotation = vec![vec![]; nodes.len()];
    for (&v, &i) in &index {
        rotation[i] = p
            .incident(v)
            .into_iter()
            .map(|c| match leaf_of_crease.get(&c) {
                Some(&leaf) => leaf,
                None => {
                    let (a, b) = p.crease_ends(c);
                    let other = if a == Node::Vertex(v) { b } else { a };
                    match other {
                        Node::Vertex(w) => index[&w],
                        Node::Infinity => unreachable!(),
                    }
                }
            })
            .collect();
    }
    for (&c, &leaf) in &leaf_of_crease {
        if let (Node::Vertex(a), _) = p.crease_ends(c) {
            rotation[leaf] = vec![index[&a]];
        }
    }
    Ok(TruncatedGraph {
        nodes,
        graph,
        rotation,
    })
}

/// A directed use of a crease: `forward` runs from its first endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub crease: CreaseId,
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    /// Boundary walk with the face on the left.
    pub boundary: Vec<HalfEdge>,
    pub unbounded: bool,
    /// The face region clipped to the square of half-size `clip_radius`.
    pub region: ConvexPolygon,
    pub convex: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaceComplex {
    pub faces: Vec<Face>,
    /// `(face left of the forward half-edge, face left of the backward one)`.
    pub crease_faces: Vec<(FaceId, FaceId)>,
    pub clip_radius: f64,
}

impl FaceComplex {
    /// The face strictly containing `p`, or any face touching it when `p`
    /// lies on a crease.
    pub fn locate(&self, p: Point2) -> Option<FaceId> {
        (0..self.faces.len())
            .find(|&f| self.faces[f].region.contains_strict(p, 0.0))
            .or_else(|| {
                (0..self.faces.len())
                    .find(|&f| self.faces[f].region.contains_strict(p, -1e-9))
            })
    }

    pub fn neighbours(&self, f: FaceId) -> Vec<(CreaseId, FaceId)> {
        self.crease_faces
            .iter()
            .enumerate()
            .filter_map(|(c, &(l, r))| {
                if l == f {
                    Some((c, r))
                } else if r == f {
                    Some((c, l))
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Clip half-size used for face regions: a generous multiple of the
/// bounding radius so overlaps of unbounded faces are seen.
pub fn region_clip(p: &CreasePattern) -> f64 {
    16.0 * p.bounding_radius()
}

pub fn build_faces(p: &CreasePattern) -> Result<FaceComplex, PatternError> {
    p.require_valid()?;
    Ok(build_faces_unchecked(p))
}

pub(crate) fn build_faces_unchecked(p: &CreasePattern) -> FaceComplex {
    let fg = folding_graph_unchecked(p);
    let n = p.crease_count();
    // rotation used for face tracing: at infinity the embedding order is the
    // reverse of the direction order
    let mut rot: BTreeMap<Node, Vec<CreaseId>> = BTreeMap::new();
    for (i, node) in fg.nodes.iter().enumerate() {
        let mut r = fg.rotation[i].clone();
        if *node == Node::Infinity {
            r.reverse();
        }
        rot.insert(*node, r);
    }
    let head = |h: HalfEdge| {
        let (a, b) = p.crease_ends(h.crease);
        if h.forward {
            b
        } else {
            a
        }
    };
    let next = |h: HalfEdge| -> HalfEdge {
        let v = head(h);
        let r = &rot[&v];
        let k = r.iter().position(|&c| c == h.crease).expect("crease in rotation");
        // the outgoing edge immediately clockwise from the twin
        let c = r[(k + r.len() - 1) % r.len()];
        let (a, _) = p.crease_ends(c);
        HalfEdge {
            crease: c,
            forward: a == v,
        }
    };
    let mut face_of: BTreeMap<HalfEdge, FaceId> = BTreeMap::new();
    let mut walks: Vec<Vec<HalfEdge>> = vec![];
    for c in 0..n {
        for forward in [true, false] {
            let start = HalfEdge { crease: c, forward };
            if face_of.contains_key(&start) {
                continue;
            }
            let id = walks.len();
            let mut walk = vec![];
            let mut h = start;
            loop {
                face_of.insert(h, id);
                walk.push(h);
                h = next(h);
                if h == start || walk.len() > 4 * n + 4 {
                    break;
                }
            }
            walks.push(walk);
        }
    }
    let clip = region_clip(p);
    let mut faces = vec![];
    for walk in walks {
        let unbounded = walk.iter().any(|h| p.is_ray(h.crease));
        let mut region = ConvexPolygon::square(clip);
        for h in &walk {
            let (a, b) = p.crease_points(h.crease);
            let (a, b) = if h.forward { (a, b) } else { (b, a) };
            region = region.clip(a, b, true);
        }
        let convex = walk_is_convex(p, &walk);
        faces.push(Face {
            boundary: walk,
            unbounded,
            region,
            convex,
        });
    }
    if n == 0 {
        // a lone vertex: the whole plane is one face
        faces.push(Face {
            boundary: vec![],
            unbounded: true,
            region: ConvexPolygon::square(clip),
            convex: true,
        });
    }
    let crease_faces = (0..n)
        .map(|c| {
            (
                face_of[&HalfEdge { crease: c, forward: true }],
                face_of[&HalfEdge { crease: c, forward: false }],
            )
        })
        .collect();
    FaceComplex {
        faces,
        crease_faces,
        clip_radius: clip,
    }
}

/// Every corner of the walk turns left by less than a half turn.
fn walk_is_convex(p: &CreasePattern, walk: &[HalfEdge]) -> bool {
    let k = walk.len();
    let outgoing = |h: HalfEdge| -> TurnAngle {
        let d = p.crease_dir(h.crease);
        if h.forward {
            d
        } else {
            d + TurnAngle::turns(1, 2)
        }
    };
    for i in 0..k {
        let h = walk[i];
        let g = walk[(i + 1) % k];
        let (a, b) = p.crease_ends(h.crease);
        let corner = if h.forward { b } else { a };
        if corner == Node::Infinity {
            continue;
        }
        // interior angle at the corner = ccw sweep from outgoing(g) to reverse(h)
        let back = outgoing(h) + TurnAngle::turns(1, 2);
        let interior = outgoing(g).ccw_to(back);
        if !interior.lt_half() || interior.is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn quarter_cross() -> CreasePattern {
        let mut p = CreasePattern::new();
        let v = p.add_vertex(Point2::ORIGIN);
        for k in 0..4 {
            p.add_ray(v, TurnAngle::turns(k, 4));
        }
        p
    }

    /// Three vertical and three horizontal full lines through x, y ∈ {0,1,2}.
    pub(crate) fn grid3() -> CreasePattern {
        let mut p = CreasePattern::new();
        let mut id = [[0usize; 3]; 3];
        for (i, row) in id.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = p.add_vertex(Point2::new(i as f64, j as f64));
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                if i + 1 < 3 {
                    p.add_segment_dir(id[i][j], id[i + 1][j], TurnAngle::ZERO);
                }
                if j + 1 < 3 {
                    p.add_segment_dir(id[i][j], id[i][j + 1], TurnAngle::turns(1, 4));
                }
            }
        }
        for k in 0..3 {
            p.add_ray(id[0][k], TurnAngle::turns(1, 2));
            p.add_ray(id[2][k], TurnAngle::ZERO);
            p.add_ray(id[k][0], TurnAngle::turns(3, 4));
            p.add_ray(id[k][2], TurnAngle::turns(1, 4));
        }
        p
    }

    #[test]
    fn validate_examples() {
        assert!(quarter_cross().validate().is_valid());

        let mut x = CreasePattern::new();
        let a = x.add_vertex(Point2::new(-1.0, 0.0));
        let b = x.add_vertex(Point2::new(1.0, 0.0));
        let c = x.add_vertex(Point2::new(0.0, -1.0));
        let d = x.add_vertex(Point2::new(0.0, 1.0));
        x.add_segment(a, b);
        x.add_segment(c, d);
        assert!(x
            .validate()
            .violations
            .contains(&Violation::CrossingCreases { a: 0, b: 1 }));

        let mut line = CreasePattern::new();
        let v = line.add_vertex(Point2::ORIGIN);
        line.add_ray(v, TurnAngle::ZERO);
        line.add_ray(v, TurnAngle::turns(1, 2));
        assert_eq!(
            line.validate().violations,
            vec![Violation::CollinearDegreeTwo { vertex: v }]
        );
    }

    #[test]
    fn overlapping_rays_conflict() {
        let mut p = CreasePattern::new();
        let a = p.add_vertex(Point2::ORIGIN);
        let b = p.add_vertex(Point2::new(1.0, 0.0));
        p.add_ray(a, TurnAngle::ZERO);
        p.add_ray(b, TurnAngle::ZERO);
        p.add_ray(a, TurnAngle::turns(1, 4));
        p.add_ray(b, TurnAngle::turns(1, 4));
        let r = p.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::VertexOnCrease { .. })));
    }

    #[test]
    fn folding_graph_examples() {
        let g = folding_graph(&quarter_cross()).unwrap();
        assert_eq!(g.nodes, vec![Node::Vertex(0), Node::Infinity]);
        assert_eq!(g.graph.edge_counts().get(&(0, 1)), Some(&4));

        let g = folding_graph(&grid3()).unwrap();
        assert_eq!(g.finite_count(), 9);
        assert!(g.has_infinity());
        let interior = g
            .graph
            .edges
            .iter()
            .filter(|&&(a, b)| a != 9 && b != 9)
            .count();
        assert_eq!(interior, 12);
        assert_eq!(g.graph.edges.len(), 24);

        let mut closed = CreasePattern::new();
        let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let ids: Vec<_> = pts.iter().map(|&(x, y)| closed.add_vertex(Point2::new(x, y))).collect();
        for i in 0..4 {
            closed.add_segment(ids[i], ids[(i + 1) % 4]);
        }
        let g = folding_graph(&closed).unwrap();
        assert!(!g.has_infinity());
    }

    #[test]
    fn truncated_graph_examples() {
        let t = truncated_graph(&quarter_cross()).unwrap();
        assert_eq!(t.graph.n, 5);
        assert_eq!(t.graph.degree(0), 4);

        // two degree-4 vertices joined by a segment, three rays each
        let mut p = CreasePattern::new();
        let a = p.add_vertex(Point2::ORIGIN);
        let b = p.add_vertex(Point2::new(1.0, 0.0));
        p.add_segment_dir(a, b, TurnAngle::ZERO);
        for k in [1, 2, 3] {
            p.add_ray(a, TurnAngle::turns(2 * k + 1, 8));
        }
        for k in [-1, 0, 1] {
            p.add_ray(b, TurnAngle::turns(k, 8));
        }
        let t = truncated_graph(&p).unwrap();
        assert_eq!(t.graph.n, 8);
        assert!(t.graph.is_tree());
        let direct = truncated_graph_direct(&p).unwrap();
        assert!(t.graph.is_isomorphic(&direct.graph));
        assert_eq!(t.plane_shape().canonical(), direct.plane_shape().canonical());

        let mut closed = CreasePattern::new();
        let ids: Vec<_> = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]
            .iter()
            .map(|&(x, y)| closed.add_vertex(Point2::new(x, y)))
            .collect();
        for i in 0..3 {
            closed.add_segment(ids[i], ids[(i + 1) % 3]);
        }
        let t = truncated_graph(&closed).unwrap();
        assert_eq!(t.graph.n, 3);
        assert_eq!(t.graph.edges.len(), 3);
    }

    #[test]
    fn faces_examples() {
        let f = build_faces(&quarter_cross()).unwrap();
        assert_eq!(f.faces.len(), 4);
        assert!(f.faces.iter().all(|x| x.unbounded && x.convex));

        let f = build_faces(&grid3()).unwrap();
        assert_eq!(f.faces.iter().filter(|x| !x.unbounded).count(), 4);
        assert_eq!(f.faces.iter().filter(|x| x.unbounded).count(), 12);

        let mut star = CreasePattern::new();
        let v = star.add_vertex(Point2::ORIGIN);
        let mut acc = 0;
        for k in [3, 3, 2, 2, 2, 2] {
            star.add_ray(v, TurnAngle::turns(acc, 14));
            acc += k;
        }
        let f = build_faces(&star).unwrap();
        assert_eq!(f.faces.len(), 6);
    }

    #[test]
    fn euler_relation_on_examples() {
        for p in [quarter_cross(), grid3()] {
            let g = folding_graph(&p).unwrap();
            let f = build_faces(&p).unwrap();
            let v = g.nodes.len() as i64;
            let e = g.graph.edges.len() as i64;
            assert_eq!(v - e + f.faces.len() as i64, 2);
        }
    }

    #[test]
    fn locate_points() {
        let f = build_faces(&quarter_cross()).unwrap();
        let a = f.locate(Point2::new(1.0, 1.0)).unwrap();
        let b = f.locate(Point2::new(-1.0, 1.0)).unwrap();
        assert_ne!(a, b);
        assert!(f.neighbours(a).iter().any(|&(_, g)| g == b));
    }
}
