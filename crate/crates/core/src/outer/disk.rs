use std::collections::BTreeSet;

use super::safe::is_safe_on;
use super::{outer_sheet, ChordSide, OuterError, OuterPattern, OuterSheet, Region};
use crate::geom::Point2;
use crate::graph::MultiGraph;
use crate::layers::{plan_to_layering, FoldPlan, FoldStep, Sign};

/// Boundary parameter span of one side of a chord.
fn side_span(p: &OuterPattern, c: usize, side: ChordSide) -> f64 {
    let (a, b) = p.chords[c];
    let (ta, tb) = (p.param(a), p.param(b));
    match side {
        ChordSide::Right => (tb - ta).rem_euclid(1.0),
        ChordSide::Left => (ta - tb).rem_euclid(1.0),
    }
}

/// Faces reachable from `start` through `chords`.
fn reach(os: &OuterSheet, start: usize, chords: &BTreeSet<usize>) -> BTreeSet<usize> {
    let dual = os.dual();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(f) = stack.pop() {
        for &(c, g) in &dual[f] {
            if chords.contains(&c) && seen.insert(g) {
                stack.push(g);
            }
        }
    }
    seen
}

/// Faces and creases of a set of chords whose faces form a path, walked
/// from the end face of smallest id. `None` when the faces branch.
pub(crate) fn path_order(
    os: &OuterSheet,
    chords: &BTreeSet<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut deg = vec![0usize; os.sheet.faces.len()];
    for &c in chords {
        let (a, b) = os.chord_faces(c);
        deg[a] += 1;
        deg[b] += 1;
    }
    if deg.iter().any(|&d| d > 2) {
        return None;
    }
    let dual = os.dual();
    let mut face = (0..deg.len()).find(|&f| deg[f] == 1)?;
    let mut left = chords.clone();
    let (mut faces, mut creases) = (vec![face], vec![]);
    while let Some(&(c, g)) = dual[face].iter().find(|(c, _)| left.contains(c)) {
        left.remove(&c);
        creases.push(c);
        faces.push(g);
        face = g;
    }
    left.is_empty().then_some((faces, creases))
}

/// Pleat a path by rigid folds from its far end: each step carries the
/// stack gathered so far onto the next face.
pub(crate) fn wrap_path(faces: &[usize], creases: &[(usize, Sign)]) -> Vec<FoldStep> {
    (0..creases.len())
        .rev()
        .map(|i| FoldStep::Wrap {
            crease: creases[i].0,
            mover: faces[i + 1],
            sign: creases[i].1,
        })
        .collect()
}

/// Alternating signs along a path of creases.
pub(crate) fn alternate(creases: &[usize], first: Sign) -> Vec<(usize, Sign)> {
    let mut sign = first;
    creases
        .iter()
        .map(|&c| {
            let out = (c, sign);
            sign = sign.flip();
            out
        })
        .collect()
}

/// Sign choices for one candidate plan: choice `i` flips its default when
/// bit `i` of the mask is set.
struct Choices {
    mask: u32,
    used: u32,
}

impl Choices {
    fn next(&mut self, default: Sign) -> Sign {
        let flip = self.used < 32 && self.mask >> self.used & 1 == 1;
        self.used += 1;
        if flip {
            default.flip()
        } else {
            default
        }
    }
}

fn plan_part(
    p: &OuterPattern,
    os: &OuterSheet,
    chords: BTreeSet<usize>,
    anchor: Option<usize>,
    default: Sign,
    choices: &mut Choices,
    plan: &mut FoldPlan,
) -> Result<(), OuterError> {
    if chords.is_empty() {
        return Ok(());
    }
    let mut deg = vec![0usize; os.sheet.faces.len()];
    for &c in &chords {
        let (a, b) = os.chord_faces(c);
        deg[a] += 1;
        deg[b] += 1;
    }
    let Some(region) = (0..deg.len()).find(|&f| deg[f] >= 3) else {
        let (faces, creases) = path_order(os, &chords).expect("faces form a path");
        let first = choices.next(default);
        let h = anchor.and_then(|a| faces.iter().position(|&f| f == a)).unwrap_or(0);
        // fold from both far ends toward the anchor, alternating outward
        let mut left = alternate(&creases[..h].iter().rev().copied().collect::<Vec<_>>(), first);
        left.reverse();
        for (i, &(c, sign)) in left.iter().enumerate() {
            plan.push_wrap(c, faces[i], sign);
        }
        plan.steps.extend(wrap_path(&faces[h..], &alternate(&creases[h..], first)));
        return Ok(());
    };
    // the side of each bounding crease away from the region
    let mut bounding: Vec<(usize, ChordSide)> = chords
        .iter()
        .filter_map(|&c| {
            let (l, r) = os.chord_faces(c);
            if l == region {
                Some((c, ChordSide::Right))
            } else if r == region {
                Some((c, ChordSide::Left))
            } else {
                None
            }
        })
        .collect();
    bounding.sort_by(|x, y| {
        side_span(p, x.0, x.1)
            .total_cmp(&side_span(p, y.0, y.1))
            .then(x.0.cmp(&y.0))
    });
    let &(safe, side) = bounding
        .iter()
        .find(|&&(c, s)| is_safe_on(p, c, s))
        .ok_or(OuterError::NoSafeCrease(region))?;
    let (l, r) = os.chord_faces(safe);
    let flap = if side == ChordSide::Left { l } else { r };
    let mut rest = chords.clone();
    rest.remove(&safe);
    let flap_faces = reach(os, flap, &rest);
    let (inner, outer): (BTreeSet<usize>, BTreeSet<usize>) = rest.into_iter().partition(|&c| {
        let (a, _) = os.chord_faces(c);
        flap_faces.contains(&a)
    });
    let sign = choices.next(default);
    plan_part(p, os, inner, Some(flap), sign.flip(), choices, plan)?;
    plan.push_wrap(safe, flap, sign);
    plan_part(p, os, outer, anchor, default, choices, plan)
}

/// Candidate sign choices tried before giving up.
const MAX_CHOICE_BITS: u32 = 10;

/// Global folding plan for a disk: fold a safe crease with its flap first
/// (after folding the flap's own creases), then the rest; regions bounded
/// by at most two creases are pleated. Each pleat and each safe fold has a
/// default sign; when the defaults collide, other sign choices are tried.
/// The plan is checked before it is returned.
pub fn disk_fold_plan(p: &OuterPattern) -> Result<FoldPlan, OuterError> {
    if !matches!(p.region, Region::Disk { .. }) {
        return Err(OuterError::WrongRegion("disk"));
    }
    let os = outer_sheet(p)?;
    let mut first_err = None;
    let mut mask = 0u32;
    loop {
        let mut choices = Choices { mask, used: 0 };
        let mut plan = FoldPlan::default();
        plan_part(p, &os, (0..p.chords.len()).collect(), None, Sign::Valley, &mut choices, &mut plan)?;
        match plan_to_layering(&plan, &os.sheet) {
            Ok(_) => return Ok(plan),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
        mask += 1;
        if mask >= 1 << choices.used.min(MAX_CHOICE_BITS) {
            return Err(first_err.expect("at least one attempt").into());
        }
    }
}

/// A cyclic order of the nodes in which all edges are pairwise
/// non-crossing chords, if one exists. Simple graphs only; the search is
/// exhaustive and meant for small graphs.
pub fn outerplanar_order(g: &MultiGraph) -> Option<Vec<usize>> {
    if g.edge_counts().iter().any(|(&(a, b), &m)| a == b || m > 1) {
        return None;
    }
    if g.n == 0 {
        return Some(vec![]);
    }
    let adj = g.adjacency();
    let mut pos = vec![usize::MAX; g.n];
    let mut order = vec![0];
    pos[0] = 0;
    fn extend(
        g: &MultiGraph,
        adj: &[Vec<(usize, usize)>],
        pos: &mut Vec<usize>,
        order: &mut Vec<usize>,
    ) -> bool {
        if order.len() == g.n {
            return true;
        }
        let k = order.len();
        for x in 0..g.n {
            if pos[x] != usize::MAX {
                continue;
            }
            let ok = adj[x].iter().all(|&(y, _)| {
                let j = pos[y];
                j == usize::MAX
                    || g.edges.iter().all(|&(a, b)| {
                        let (pa, pb) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
                        pb == usize::MAX || pa == j || pb == j || !(pa < j && j < pb)
                    })
            });
            if !ok {
                continue;
            }
            pos[x] = k;
            order.push(x);
            if extend(g, adj, pos, order) {
                return true;
            }
            order.pop();
            pos[x] = usize::MAX;
        }
        false
    }
    extend(g, &adj, &mut pos, &mut order).then_some(order)
}

/// Place the nodes on the unit circle in outer-face order and draw every
/// edge as a chord. Point id `i` is node `i`.
pub fn realize_outerplanar_on_disk(g: &MultiGraph) -> Result<OuterPattern, OuterError> {
    let order = outerplanar_order(g).ok_or(OuterError::NotOuterplanar)?;
    let mut p = OuterPattern::new(Region::Disk {
        center: Point2::ORIGIN,
        radius: 1.0,
    });
    let n = order.len();
    for (i, &v) in order.iter().enumerate() {
        p.points.insert(v, p.region.point_at(i as f64 / n as f64));
    }
    p.chords = g.edges.clone();
    Ok(p)
}
