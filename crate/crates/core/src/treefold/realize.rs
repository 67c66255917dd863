use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::{check_tree_foldable, plan::tree_plan, PlaneTree, TreeError};
use crate::foldcheck::{build_fold_map, convexity_check, kawasaki_check, maekawa_check, FoldMap};
use crate::geom::{Point2, TurnAngle, Wedge};
use crate::layers::{plan_to_layering, validate_layering, FoldPlan, Layering};
use crate::pattern::{truncated_graph, CreaseId, CreasePattern};

/// One protected wedge per ray, keyed by the ray's crease id.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WedgeCert {
    pub wedges: BTreeMap<CreaseId, Wedge>,
}

#[derive(Clone, Debug)]
pub struct TreeRealization {
    pub pattern: CreasePattern,
    pub cert: WedgeCert,
    pub plan: FoldPlan,
    /// Tree leaf -> ray crease.
    pub leaf_rays: BTreeMap<usize, CreaseId>,
    /// Internal nodes in the order they were placed (base vertex first).
    pub order: Vec<usize>,
}

impl TreeRealization {
    pub fn fold_map(&self) -> Result<FoldMap, TreeError> {
        Ok(build_fold_map(&self.pattern, None)?)
    }

    pub fn layering(&self) -> Result<Layering, TreeError> {
        let m = self.fold_map()?;
        Ok(plan_to_layering(&self.plan, &m.to_sheet())?)
    }
}

struct OpenRay {
    apex: usize,
    dir: TurnAngle,
    opening: TurnAngle,
}

struct Build {
    pos: BTreeMap<usize, Point2>,
    segments: Vec<(usize, usize, TurnAngle)>,
    rays: BTreeMap<usize, OpenRay>,
}

impl Build {
    fn wedge(&self, r: &OpenRay) -> Wedge {
        Wedge::centered(self.pos[&r.apex], r.dir, r.opening)
    }

    /// New wedges at `v` against every other wedge and segment.
    fn check_step(&self, new_leaves: &[usize]) -> Result<(), TreeError> {
        for &leaf in new_leaves {
            let w = self.wedge(&self.rays[&leaf]);
            if !w.median().approx_eq(&self.rays[&leaf].dir) {
                return Err(TreeError::Certificate(format!("ray to {leaf} is not its wedge's median")));
            }
            for (&other, r) in &self.rays {
                if other != leaf && !w.interior_disjoint(&self.wedge(r)) {
                    return Err(TreeError::Certificate(format!("wedges of {leaf} and {other} overlap")));
                }
            }
            for &(a, b, _) in &self.segments {
                if w.segment_meets_interior(self.pos[&a], self.pos[&b]) {
                    return Err(TreeError::Certificate(format!("segment {a}-{b} enters wedge of {leaf}")));
                }
            }
        }
        Ok(())
    }
}

/// Internal nodes in stripping order: deepest (by BFS from the smallest
/// internal node) first, ties to the smallest id. The root comes last.
fn strip_order(t: &PlaneTree) -> Vec<usize> {
    let root = t.internal_nodes()[0];
    let mut depth = vec![usize::MAX; t.len()];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &t.rotation[u] {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut internal: Vec<usize> = t.internal_nodes();
    internal.sort_by_key(|&v| (std::cmp::Reverse(depth[v]), v));
    internal
}

pub fn realize_tree(t: &PlaneTree) -> Result<TreeRealization, TreeError> {
    if t.is_empty() {
        return Err(TreeError::Empty);
    }
    let check = check_tree_foldable(t);
    if let Some(node) = check.witness {
        return Err(TreeError::BadDegree { node, degree: t.degree(node) });
    }
    if t.internal_nodes().is_empty() {
        return Err(TreeError::NoInternalNode);
    }
    let mut order = strip_order(t);
    order.reverse();
    let root = order[0];

    // base star: two gaps of 3θ then 2θ, θ = half a turn / (d + 1)
    let d = t.degree(root);
    let theta = TurnAngle::turns(1, 2 * (d as i64 + 1));
    let mut b = Build {
        pos: BTreeMap::from([(root, Point2::ORIGIN)]),
        segments: vec![],
        rays: BTreeMap::new(),
    };
    let mut dir = TurnAngle::ZERO;
    for (k, &leaf) in t.rotation[root].iter().enumerate() {
        b.rays.insert(leaf, OpenRay { apex: root, dir, opening: theta.mul_int(2) });
        dir = dir + theta.mul_int(if k < 2 { 3 } else { 2 });
    }
    b.check_step(&t.rotation[root])?;

    let mut parent_seg = BTreeMap::new();
    for &v in &order[1..] {
        let r = b.rays.remove(&v).expect("placed nodes hang off an open ray");
        let p = b.pos[&r.apex] + Point2::unit(r.dir);
        b.pos.insert(v, p);
        parent_seg.insert(v, b.segments.len());
        b.segments.push((r.apex, v, r.dir));
        let rot = &t.rotation[v];
        let d = rot.len() as i64;
        let at = rot.iter().position(|&w| w == r.apex).expect("parent is a neighbour");
        let step = r.opening.div_int(d);
        let start = r.dir - r.opening.half();
        let mut leaves = vec![];
        for k in 1..d {
            let leaf = rot[(at + k as usize) % rot.len()];
            b.rays.insert(leaf, OpenRay { apex: v, dir: start + step.mul_int(k), opening: step });
            leaves.push(leaf);
        }
        b.check_step(&leaves)?;
    }

    let mut pattern = CreasePattern::new();
    pattern.vertices = b.pos.clone();
    for &(a, c, dir) in &b.segments {
        pattern.add_segment_dir(a, c, dir);
    }
    let mut cert = WedgeCert { wedges: BTreeMap::new() };
    let mut leaf_rays = BTreeMap::new();
    for (&leaf, r) in &b.rays {
        let c = pattern.add_ray(r.apex, r.dir);
        cert.wedges.insert(c, b.wedge(r));
        leaf_rays.insert(leaf, c);
    }
    let m = build_fold_map(&pattern, None)?;
    let plan = tree_plan(&pattern, &m, &order, &parent_seg);
    Ok(TreeRealization { pattern, cert, plan, leaf_rays, order })
}

/// The one-vertex realization with `d` rays.
pub fn realize_base_star(d: usize) -> Result<TreeRealization, TreeError> {
    if d < 4 || d % 2 == 1 {
        return Err(TreeError::BadDegree { node: 0, degree: d });
    }
    realize_tree(&PlaneTree::star(d))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizationReport {
    pub maekawa: bool,
    pub kawasaki_exact: bool,
    pub convex: bool,
    pub wedges: bool,
    pub layering: bool,
    pub protected_wedges: bool,
    pub isomorphic: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RealizationReport {
    pub fn pass(&self) -> bool {
        self.maekawa
            && self.kawasaki_exact
            && self.convex
            && self.wedges
            && self.layering
            && self.protected_wedges
            && self.isomorphic
    }
}

fn wedges_ok(r: &TreeRealization, notes: &mut Vec<String>) -> bool {
    let p = &r.pattern;
    let ws: Vec<(&CreaseId, &Wedge)> = r.cert.wedges.iter().collect();
    for (i, &(&c, w)) in ws.iter().enumerate() {
        let ray = p.rays[c - p.segments.len()];
        if w.apex != p.pos(ray.apex) || w.median() != ray.dir {
            notes.push(format!("ray {c} is not the median of its wedge"));
            return false;
        }
        for &(&c2, w2) in &ws[i + 1..] {
            if !w.interior_disjoint(w2) {
                notes.push(format!("wedges of rays {c} and {c2} overlap"));
                return false;
            }
        }
        for s in &p.segments {
            if w.segment_meets_interior(p.pos(s.a), p.pos(s.b)) {
                notes.push(format!("segment {}-{} meets wedge of ray {c}", s.a, s.b));
                return false;
            }
        }
    }
    true
}

/// Over each protected wedge's image no other face sits between its two
/// flanking faces.
fn protected_ok(r: &TreeRealization, m: &FoldMap, l: &Layering, notes: &mut Vec<String>) -> bool {
    let sheet = m.to_sheet();
    for (&c, w) in &r.cert.wedges {
        let (a, b) = m.faces.crease_faces[c];
        let half = w
            .clipped(m.faces.clip_radius)
            .intersect(&m.faces.faces[a].region)
            .transformed(&m.isos[a]);
        for h in 0..sheet.faces.len() {
            if h == a || h == b {
                continue;
            }
            let between = match (l.is_below(a, h), l.is_below(h, b)) {
                (Some(x), Some(y)) => x == y,
                _ => false,
            };
            if between && sheet.image(h).intersect(&half).area().abs() > 1e-9 {
                notes.push(format!("face {h} lies inside the protected wedge of ray {c}"));
                return false;
            }
        }
    }
    true
}

pub fn verify_realization(t: &PlaneTree, r: &TreeRealization) -> Result<RealizationReport, TreeError> {
    let p = &r.pattern;
    let mut notes = vec![];
    let maekawa = maekawa_check(p).pass();
    let kawasaki_exact = kawasaki_check(p)?
        .vertices
        .iter()
        .all(|v| v.value.and_then(|s| s.exact()).is_some_and(|s| s == 0.into()));
    let convex = convexity_check(p).pass();
    let wedges = wedges_ok(r, &mut notes);
    let m = r.fold_map()?;
    let (layering, protected_wedges) = match plan_to_layering(&r.plan, &m.to_sheet()) {
        Ok(l) => {
            let valid = validate_layering(&m.to_sheet(), &l)?.pass();
            (valid, protected_ok(r, &m, &l, &mut notes))
        }
        Err(e) => {
            notes.push(e.to_string());
            (false, false)
        }
    };
    let isomorphic = truncated_graph(p)?.plane_shape().canonical() == t.shape().canonical();
    Ok(RealizationReport {
        maekawa,
        kawasaki_exact,
        convex,
        wedges,
        layering,
        protected_wedges,
        isomorphic,
        notes,
    })
}
