use std::collections::BTreeMap;

use crate::foldcheck::FoldMap;
use crate::layers::{FoldPlan, Sign};
use crate::pattern::{CreaseId, CreasePattern, FaceId};

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Pleat plan for a tree realization. At every vertex the faces are
/// stacked bottom to top starting from one of the two large wedges,
/// through the small ones, to the other large wedge. Which large wedge is
/// lowest follows from the parent's stack, so that each child's pleat sits
/// between the two faces flanking its ray. Steps are emitted deepest vertex
/// first.
pub(super) fn tree_plan(
    p: &CreasePattern,
    m: &FoldMap,
    order: &[usize],
    parent_seg: &BTreeMap<usize, CreaseId>,
) -> FoldPlan {
    let mut lower: BTreeMap<CreaseId, FaceId> = BTreeMap::new();
    let mut chains: Vec<Vec<(FaceId, FaceId, CreaseId)>> = vec![];
    for &v in order {
        let inc = p.incident(v);
        let d = inc.len();
        let (at, forward) = match parent_seg.get(&v) {
            Some(&seg) => {
                let at = inc.iter().position(|&c| c == seg).expect("segment incident");
                (at, lower[&seg] == m.face_after(v, seg))
            }
            None => {
                // base: the ray between the two widest gaps
                let dirs: Vec<_> = inc.iter().map(|&c| p.dir_from(c, v)).collect();
                let gap = |i: usize| dirs[i].ccw_to(dirs[(i + 1) % d]);
                let widest = (0..d)
                    .map(gap)
                    .max_by(|a, b| a.cmp_value(b))
                    .expect("vertex has creases");
                let at = (0..d)
                    .find(|&i| gap(i) == widest && gap((i + 1) % d) == widest)
                    .map_or(0, |i| (i + 1) % d);
                lower.insert(inc[at], m.face_after(v, inc[at]));
                (at, true)
            }
        };
        let faces: Vec<FaceId> = (0..d).map(|k| m.face_after(v, inc[(at + k) % d])).collect();
        let mut chain = vec![];
        for k in 1..d {
            let c = inc[(at + k) % d];
            let (lo, hi) = (faces[k - 1], faces[k]);
            let (lo, hi) = if forward { (lo, hi) } else { (hi, lo) };
            lower.insert(c, lo);
            chain.push((lo, hi, c));
        }
        if !forward {
            chain.reverse();
        }
        chains.push(chain);
    }

    let mut dsu: Vec<usize> = (0..m.face_count()).collect();
    let mut plan = FoldPlan::default();
    for chain in chains.iter().rev() {
        for &(host, mover, crease) in chain {
            let (a, b) = (find(&mut dsu, host), find(&mut dsu, mover));
            if a == b {
                continue;
            }
            dsu[b] = a;
            let sign = if m.isos[host].orientation.is_reversing() {
                Sign::Mountain
            } else {
                Sign::Valley
            };
            plan.push_fold(crease, mover, sign);
        }
    }
    plan
}
